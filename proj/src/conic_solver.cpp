// Primal-dual path-following interior-point method for
//   max c^T y  s.t.  S_b = F0_b + sum_i y_i F_{b,i} in K_b,
// paired with  min sum_b <F0_b, X_b>  s.t.  sum_b <F_{b,i}, X_b> = -c_i, X_b in K_b.
// Nesterov-Todd scaling, Mehrotra predictor-corrector, infeasible start.
// The iteration is templated on the working scalar so ill-conditioned
// instances can be rerun in quad precision.

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <optional>

#include "volmom/conic.hpp"
#include "volmom/double_double.hpp"
#include "volmom/multiprecision.hpp"

namespace volmom::conic {

namespace {

template <class T>
struct Types {
  using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
  using Sparse = Eigen::SparseMatrix<T>;
  using BlockVec = std::vector<Mat>;
};

template <class T>
double to_double(const T& v) {
  return static_cast<double>(v);
}

struct VarTerms {
  int var;
  std::vector<SymEntry> entries;
};

template <class T>
struct PsdData {
  int s = 0;
  typename Types<T>::Mat c0;
  std::vector<VarTerms> terms;
};

template <class T>
struct LpData {
  int k = 0;
  typename Types<T>::Vec c0;
  typename Types<T>::Sparse f;  // k x N
};

template <class T>
struct Model {
  int n = 0;
  typename Types<T>::Vec c;
  std::vector<std::optional<PsdData<T>>> psd;
  std::vector<std::optional<LpData<T>>> lp;
  int nu = 0;  // barrier parameter: sum of block orders
  T norm_c0 = 0;
};

template <class T, class M>
T inner(const std::vector<SymEntry>& f, const M& x) {
  T s(0);
  for (const auto& e : f) s += T(e.row == e.col ? e.value : 2.0 * e.value) * x(e.row, e.col);
  return s;
}

template <class M, class T>
void add_scaled(M& m, const std::vector<SymEntry>& f, const T& alpha) {
  for (const auto& e : f) {
    m(e.row, e.col) += alpha * T(e.value);
    if (e.row != e.col) m(e.col, e.row) += alpha * T(e.value);
  }
}

template <class T>
Model<T> build_model(const StandardConicProblem& p) {
  using Mat = typename Types<T>::Mat;
  using Vec = typename Types<T>::Vec;
  Model<T> m;
  m.n = static_cast<int>(p.num_vars);
  m.c = Vec(m.n);
  for (int i = 0; i < m.n; ++i) m.c(i) = T(p.objective[i]);
  T c0sq(0);
  for (const auto& b : p.blocks) {
    if (b.kind == ConeKind::PSD) {
      PsdData<T> d;
      d.s = static_cast<int>(b.size);
      d.c0 = Mat::Zero(d.s, d.s);
      add_scaled(d.c0, b.constant, T(1));
      for (std::size_t i = 0; i < b.coefficients.size(); ++i)
        if (!b.coefficients[i].empty()) d.terms.push_back({static_cast<int>(i), b.coefficients[i]});
      c0sq += d.c0.squaredNorm();
      m.nu += d.s;
      m.psd.emplace_back(std::move(d));
      m.lp.emplace_back();
    } else {
      LpData<T> d;
      d.k = static_cast<int>(b.size);
      d.c0 = Vec::Zero(d.k);
      for (const auto& e : b.constant) d.c0(e.row) += T(e.value);
      std::vector<Eigen::Triplet<T>> trip;
      for (std::size_t i = 0; i < b.coefficients.size(); ++i)
        for (const auto& e : b.coefficients[i])
          trip.emplace_back(e.row, static_cast<int>(i), T(e.value));
      d.f.resize(d.k, m.n);
      d.f.setFromTriplets(trip.begin(), trip.end());
      c0sq += d.c0.squaredNorm();
      m.nu += d.k;
      m.lp.emplace_back(std::move(d));
      m.psd.emplace_back();
    }
  }
  using std::sqrt;
  m.norm_c0 = sqrt(c0sq);
  return m;
}

template <class T>
typename Types<T>::Vec apply_f(const Model<T>& m, const typename Types<T>::BlockVec& x) {
  typename Types<T>::Vec r = Types<T>::Vec::Zero(m.n);
  for (std::size_t b = 0; b < x.size(); ++b) {
    if (m.psd[b]) {
      for (const auto& t : m.psd[b]->terms) r(t.var) += inner<T>(t.entries, x[b]);
    } else {
      r += m.lp[b]->f.transpose() * x[b].col(0);
    }
  }
  return r;
}

template <class T>
typename Types<T>::BlockVec apply_ft(const Model<T>& m, const typename Types<T>::Vec& y) {
  using Mat = typename Types<T>::Mat;
  typename Types<T>::BlockVec out(m.psd.size());
  for (std::size_t b = 0; b < out.size(); ++b) {
    if (m.psd[b]) {
      out[b] = Mat::Zero(m.psd[b]->s, m.psd[b]->s);
      for (const auto& t : m.psd[b]->terms)
        if (y(t.var) != 0) add_scaled(out[b], t.entries, y(t.var));
    } else {
      out[b] = m.lp[b]->f * y;
    }
  }
  return out;
}

template <class T>
T block_dot(const typename Types<T>::BlockVec& a, const typename Types<T>::BlockVec& b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i].array() * b[i].array()).sum();
  return s;
}

// Per-block NT scaling data.
template <class T>
struct Scaling {
  typename Types<T>::Mat g;       // X = G V G^T, S = G^{-T} V G^{-1}
  typename Types<T>::Mat w;       // W = G G^T, W S W = X
  typename Types<T>::Vec v;       // eigenvalues of the scaled point V
  typename Types<T>::Mat chol_x;  // lower Cholesky factor of X
  typename Types<T>::Mat chol_s;  // lower Cholesky factor of S
};

template <class M>
bool lower_cholesky(const M& a, M& l) {
  Eigen::LLT<M> llt(a);
  if (llt.info() != Eigen::Success) return false;
  l = llt.matrixL();
  return l.diagonal().minCoeff() > 0;
}

// Largest alpha with L L^T + alpha D still in the cone, via the minimum eigenvalue
// of L^{-1} D L^{-T}. The triangular solves run in T; the eigenvalue only steers
// the step length, so it is taken in double.
template <class T>
T max_step_psd(const typename Types<T>::Mat& l, const typename Types<T>::Mat& d) {
  using Mat = typename Types<T>::Mat;
  Mat t = l.template triangularView<Eigen::Lower>().solve(d);
  t = l.template triangularView<Eigen::Lower>().solve(Mat(t.transpose())).transpose();
  Eigen::MatrixXd td(t.rows(), t.cols());
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) td(i, j) = 0.5 * to_double(T(t(i, j) + t(j, i)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(td, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return lmin >= 0 ? std::numeric_limits<T>::infinity() : T(-1.0 / lmin);
}

template <class T>
T max_step_lp(const typename Types<T>::Vec& x, const typename Types<T>::Vec& dx) {
  T a = std::numeric_limits<T>::infinity();
  for (int i = 0; i < x.size(); ++i)
    if (dx(i) < 0) a = std::min<T>(a, -x(i) / dx(i));
  return a;
}

template <class T>
struct Metrics {
  T pobj, dobj, gap, pinf, dinf, mu;
};

template <class T>
Eigen::MatrixXd to_double_matrix(const typename Types<T>::Mat& a) {
  Eigen::MatrixXd r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = to_double(a(i, j));
  return r;
}

template <class T>
SolveResult solve_impl(const StandardConicProblem& problem, const SolverOptions& opts) {
  using Mat = typename Types<T>::Mat;
  using Vec = typename Types<T>::Vec;
  using BlockVec = typename Types<T>::BlockVec;
  using std::abs;
  using std::isfinite;
  using std::pow;
  using std::sqrt;

  const Model<T> m = build_model<T>(problem);
  const std::size_t nb = problem.blocks.size();
  const T norm_c = m.c.norm();
  const T inf = std::numeric_limits<T>::infinity();

  // Starting point X = xi I, S = eta I scaled to the data.
  BlockVec x(nb), s(nb);
  Vec y = Vec::Zero(m.n);
  for (std::size_t b = 0; b < nb; ++b) {
    const bool is_psd = m.psd[b].has_value();
    const int dim = is_psd ? m.psd[b]->s : m.lp[b]->k;
    double max_fnorm = 0.0;
    double xi_ratio = 0.0;
    if (is_psd) {
      for (const auto& t : m.psd[b]->terms) {
        double fn = 0.0;
        for (const auto& e : t.entries) fn += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
        fn = std::sqrt(fn);
        max_fnorm = std::max(max_fnorm, fn);
        xi_ratio = std::max(xi_ratio, (1.0 + std::abs(problem.objective[t.var])) / (1.0 + fn));
      }
    } else {
      for (int i = 0; i < m.n; ++i) {
        const double fn = to_double(T(m.lp[b]->f.col(i).norm()));
        if (fn == 0.0) continue;
        max_fnorm = std::max(max_fnorm, fn);
        xi_ratio = std::max(xi_ratio, (1.0 + std::abs(problem.objective[i])) / (1.0 + fn));
      }
    }
    const double c0n = to_double(T(is_psd ? m.psd[b]->c0.norm() : m.lp[b]->c0.norm()));
    const double sq = std::sqrt(static_cast<double>(dim));
    const T xi(std::max({10.0, sq, dim * xi_ratio}));
    const T eta(std::max({10.0, sq, max_fnorm, c0n}));
    if (is_psd) {
      x[b] = xi * Mat::Identity(dim, dim);
      s[b] = eta * Mat::Identity(dim, dim);
    } else {
      x[b] = Vec::Constant(dim, xi);
      s[b] = Vec::Constant(dim, eta);
    }
  }

  BlockVec c0(nb);
  for (std::size_t b = 0; b < nb; ++b) c0[b] = m.psd[b] ? m.psd[b]->c0 : Mat(m.lp[b]->c0);

  auto metrics = [&]() {
    Metrics<T> mt{};
    const Vec rp = m.c + apply_f(m, x);
    const BlockVec fty = apply_ft(m, y);
    T rd2(0);
    for (std::size_t b = 0; b < nb; ++b) rd2 += (c0[b] + fty[b] - s[b]).squaredNorm();
    // Names follow the min-side convention internally: pobj = <F0, X>, dobj = c^T y.
    mt.pobj = block_dot<T>(c0, x);
    mt.dobj = m.c.dot(y);
    mt.gap = abs(mt.pobj - mt.dobj) / (T(1) + abs(mt.pobj) + abs(mt.dobj));
    mt.pinf = rp.norm() / (T(1) + norm_c);
    mt.dinf = sqrt(rd2) / (T(1) + m.norm_c0);
    mt.mu = block_dot<T>(x, s) / T(m.nu);
    return mt;
  };

  auto snapshot = [&](const Metrics<T>& mt, int iter) {
    SolveResult r;
    r.y.resize(m.n);
    for (int i = 0; i < m.n; ++i) r.y[i] = to_double(y(i));
    for (std::size_t b = 0; b < nb; ++b) {
      r.dual.push_back(to_double_matrix<T>(x[b]));
      r.slack.push_back(to_double_matrix<T>(s[b]));
    }
    r.primal_objective = to_double(mt.dobj);
    r.dual_objective = to_double(mt.pobj);
    r.primal_infeasibility = to_double(mt.dinf);
    r.dual_infeasibility = to_double(mt.pinf);
    r.relative_gap = to_double(mt.gap);
    r.iterations = iter;
    return r;
  };

  SolveResult best;
  T best_score = inf;
  SolveStatus status = SolveStatus::NumericalLimit;
  int iter = 0;
  int stalls = 0;
  T prev_score = inf;
  const T tol_feas(opts.tol_feas);
  const T tol_gap(opts.tol_gap);
  for (; iter <= opts.max_iter; ++iter) {
    const Metrics<T> mt = metrics();
    const T score = std::max({mt.pinf, mt.dinf, mt.gap});
    if (score < best_score) {
      best_score = score;
      best = snapshot(mt, iter);
    }
    if (opts.verbose)
      std::cerr << "iter " << iter << " pobj " << to_double(mt.dobj) << " dobj "
                << to_double(mt.pobj) << " gap " << to_double(mt.gap) << " pinf "
                << to_double(mt.dinf) << " dinf " << to_double(mt.pinf) << " mu "
                << to_double(mt.mu) << "\n";
    if (mt.pinf <= tol_feas && mt.dinf <= tol_feas && mt.gap <= tol_gap) {
      status = SolveStatus::Optimal;
      break;
    }
    if (mt.dobj > T(1e12) * (T(1) + norm_c) && mt.dinf <= T(1e-6)) {
      status = SolveStatus::Unbounded;
      break;
    }
    if (mt.pobj < T(-1e12) * (T(1) + m.norm_c0) && mt.pinf <= T(1e-6)) {
      status = SolveStatus::Infeasible;
      break;
    }
    if (iter == opts.max_iter) break;
    stalls = score > T(0.999) * prev_score ? stalls + 1 : 0;
    prev_score = std::min(prev_score, score);
    if (stalls >= 12) break;

    // Scaling.
    std::vector<Scaling<T>> sc(nb);
    bool ok = true;
    for (std::size_t b = 0; b < nb && ok; ++b) {
      if (!m.psd[b]) continue;
      auto& k = sc[b];
      if (!lower_cholesky(x[b], k.chol_x) || !lower_cholesky(s[b], k.chol_s)) {
        ok = false;
        break;
      }
      Mat t = k.chol_x.transpose() * s[b] * k.chol_x;
      t = (T(0.5) * (t + t.transpose())).eval();
      Eigen::SelfAdjointEigenSolver<Mat> es(t);
      const Vec lam = es.eigenvalues();
      if (lam.minCoeff() <= 0) {
        ok = false;
        break;
      }
      k.v = lam.cwiseSqrt();
      Vec quarter(lam.size());
      for (int i = 0; i < lam.size(); ++i) quarter(i) = T(1) / sqrt(k.v(i));
      k.g = k.chol_x * es.eigenvectors() * quarter.asDiagonal();
      k.w = k.g * k.g.transpose();
      k.w = (T(0.5) * (k.w + k.w.transpose())).eval();
    }
    if (!ok) break;

    // Schur complement M_ij = sum_b <F_i, W F_j W>.
    Mat schur = Mat::Zero(m.n, m.n);
    for (std::size_t b = 0; b < nb; ++b) {
      if (m.psd[b]) {
        const auto& terms = m.psd[b]->terms;
        const Mat& w = sc[b].w;
        const int sb = m.psd[b]->s;
        // P = W F_i W as W (F_i W), skipping the rows of F_i W that stay zero.
        Mat q(sb, sb);
        Mat p(sb, sb);
        std::vector<char> touched(sb);
        std::vector<int> rows;
        for (std::size_t ti = 0; ti < terms.size(); ++ti) {
          q.setZero();
          std::fill(touched.begin(), touched.end(), 0);
          rows.clear();
          auto add_row = [&](int r, int c, const T& v) {
            q.row(r) += v * w.row(c);
            if (!touched[r]) {
              touched[r] = 1;
              rows.push_back(r);
            }
          };
          for (const auto& e : terms[ti].entries) {
            const T v(e.value);
            add_row(e.row, e.col, v);
            if (e.row != e.col) add_row(e.col, e.row, v);
          }
          p.setZero();
          for (int r : rows) p.noalias() += w.col(r) * q.row(r);
          const int vi = terms[ti].var;
          for (std::size_t tj = ti; tj < terms.size(); ++tj)
            schur(vi, terms[tj].var) += inner<T>(terms[tj].entries, p);
        }
      } else {
        Vec d = x[b].col(0).cwiseQuotient(s[b].col(0));
        const auto& f = m.lp[b]->f;
        typename Types<T>::Sparse fd = d.asDiagonal() * f;
        Mat contrib = Mat(f.transpose() * fd);
        schur.template triangularView<Eigen::Upper>() += contrib;
      }
    }
    schur = schur.template selfadjointView<Eigen::Upper>();

    Eigen::LLT<Mat> llt(schur);
    Eigen::LDLT<Mat> ldlt;
    const bool use_ldlt = llt.info() != Eigen::Success;
    if (use_ldlt) {
      ldlt.compute(schur);
      if (ldlt.info() != Eigen::Success) break;
    }
    auto schur_solve = [&](const Vec& rhs) -> Vec {
      Vec sol = use_ldlt ? Vec(ldlt.solve(rhs)) : Vec(llt.solve(rhs));
      // One step of iterative refinement.
      const Vec res = rhs - schur * sol;
      sol += use_ldlt ? Vec(ldlt.solve(res)) : Vec(llt.solve(res));
      return sol;
    };

    const Vec rp = m.c + apply_f(m, x);
    BlockVec rd = apply_ft(m, y);
    for (std::size_t b = 0; b < nb; ++b) rd[b] = c0[b] + rd[b] - s[b];
    BlockVec w_rd_w(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      if (m.psd[b])
        w_rd_w[b] = sc[b].w * rd[b] * sc[b].w;
      else
        w_rd_w[b] = x[b].cwiseQuotient(s[b]).cwiseProduct(rd[b]);
    }
    const Vec f_wrdw = apply_f(m, w_rd_w);

    struct Direction {
      BlockVec dx, ds;
      Vec dy;
      std::vector<Mat> h;  // scaled-space pieces for the corrector
    };

    // rhs[b]: scaled complementarity residual R (PSD, in the eigenbasis of V)
    // or r = sigma mu - x s - corr (LP).
    auto direction = [&](const BlockVec& rhs) {
      Direction dir;
      dir.h.resize(nb);
      BlockVec xh(nb);
      for (std::size_t b = 0; b < nb; ++b) {
        if (m.psd[b]) {
          const Vec& v = sc[b].v;
          Mat h = rhs[b];
          for (int i = 0; i < h.rows(); ++i)
            for (int j = 0; j < h.cols(); ++j) h(i, j) /= (v(i) + v(j));
          dir.h[b] = h;
          xh[b] = sc[b].g * h * sc[b].g.transpose();
        } else {
          xh[b] = rhs[b].cwiseQuotient(s[b]);
        }
      }
      const Vec r = rp + apply_f(m, xh) - f_wrdw;
      dir.dy = schur_solve(r);
      dir.ds = apply_ft(m, dir.dy);
      dir.dx.resize(nb);
      for (std::size_t b = 0; b < nb; ++b) {
        dir.ds[b] += rd[b];
        if (m.psd[b]) {
          Mat dxb = xh[b] - sc[b].w * dir.ds[b] * sc[b].w;
          dir.dx[b] = T(0.5) * (dxb + dxb.transpose());
        } else {
          dir.dx[b] = xh[b] - x[b].cwiseQuotient(s[b]).cwiseProduct(dir.ds[b]);
        }
      }
      return dir;
    };

    auto step_lengths = [&](const Direction& dir) {
      T ap = inf;
      T ad = inf;
      for (std::size_t b = 0; b < nb; ++b) {
        if (m.psd[b]) {
          ap = std::min(ap, max_step_psd<T>(sc[b].chol_x, dir.dx[b]));
          ad = std::min(ad, max_step_psd<T>(sc[b].chol_s, dir.ds[b]));
        } else {
          ap = std::min(ap, max_step_lp<T>(x[b].col(0), dir.dx[b].col(0)));
          ad = std::min(ad, max_step_lp<T>(s[b].col(0), dir.ds[b].col(0)));
        }
      }
      return std::pair{ap, ad};
    };

    // Predictor (affine scaling): R = -2 V^2, r = -x s.
    BlockVec rhs(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      if (m.psd[b])
        rhs[b] = Mat((T(-2) * sc[b].v.array().square()).matrix().asDiagonal());
      else
        rhs[b] = -x[b].cwiseProduct(s[b]);
    }
    const Direction pred = direction(rhs);
    auto [ap_a, ad_a] = step_lengths(pred);
    ap_a = std::min(T(1), ap_a);
    ad_a = std::min(T(1), ad_a);
    T mu_aff(0);
    for (std::size_t b = 0; b < nb; ++b)
      mu_aff += ((x[b] + ap_a * pred.dx[b]).array() * (s[b] + ad_a * pred.ds[b]).array()).sum();
    mu_aff /= T(m.nu);
    const T ratio = std::clamp(T(mu_aff / mt.mu), T(0), T(1));
    const T amin = std::min(ap_a, ad_a);
    const T expo = std::max(T(1), T(3) * amin * amin);
    const T sigma = pow(ratio, expo);

    // Corrector with the second-order term of the predictor.
    for (std::size_t b = 0; b < nb; ++b) {
      if (m.psd[b]) {
        const Mat dst = sc[b].g.transpose() * pred.ds[b] * sc[b].g;
        const Mat dxt = pred.h[b] - dst;
        const Mat cross = dxt * dst;
        Mat r = Mat((T(2) * (sigma * mt.mu - sc[b].v.array().square())).matrix().asDiagonal());
        r -= cross + cross.transpose();
        rhs[b] = r;
      } else {
        rhs[b] = (Vec::Constant(m.lp[b]->k, sigma * mt.mu) - x[b].cwiseProduct(s[b]) -
                  pred.dx[b].cwiseProduct(pred.ds[b]));
      }
    }
    const Direction corr = direction(rhs);
    auto [ap, ad] = step_lengths(corr);
    const T tau = T(0.9) + T(0.09) * amin;
    ap = std::min(T(1), tau * ap);
    ad = std::min(T(1), tau * ad);
    if (!isfinite(ap) || !isfinite(ad)) break;
    bool finite = true;
    for (int i = 0; i < corr.dy.size(); ++i) finite = finite && isfinite(corr.dy(i));
    if (!finite) break;
    if (ap < T(1e-10) && ad < T(1e-10)) break;

    for (std::size_t b = 0; b < nb; ++b) {
      x[b] += ap * corr.dx[b];
      s[b] += ad * corr.ds[b];
    }
    y += ad * corr.dy;
  }

  if (status == SolveStatus::NumericalLimit) {
    best.status = status;
    best.iterations = iter;
    return best;
  }
  // Report the final iterate rather than the best-scored one.
  SolveResult out = snapshot(metrics(), iter);
  out.status = status;
  return out;
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::NumericalLimit: return "numerical_limit";
  }
  return "unknown";
}

std::string to_string(Precision p) {
  switch (p) {
    case Precision::Double: return "double";
    case Precision::DoubleDouble: return "double-double";
    case Precision::Quad: return "quad";
    case Precision::Auto: return "auto";
  }
  return "unknown";
}

SolveResult solve(const StandardConicProblem& problem, const SolverOptions& opts) {
  problem.validate();
  if (problem.num_vars > opts.max_vars)
    throw Error("reference solver limited to " + std::to_string(opts.max_vars) + " variables");
  if (opts.precision == Precision::Quad) {
    SolveResult r = solve_impl<Quad>(problem, opts);
    r.precision = Precision::Quad;
    return r;
  }
  if (opts.precision == Precision::DoubleDouble) {
    SolveResult r = solve_impl<DoubleDouble>(problem, opts);
    r.precision = Precision::DoubleDouble;
    return r;
  }
  SolveResult r = solve_impl<double>(problem, opts);
  r.precision = Precision::Double;
  if (opts.precision == Precision::Auto && r.status == SolveStatus::NumericalLimit &&
      problem.num_vars <= opts.extended_max_vars) {
    SolveResult q = solve_impl<DoubleDouble>(problem, opts);
    q.precision = Precision::DoubleDouble;
    q.iterations += r.iterations;
    const auto score = [](const SolveResult& s) {
      return std::max({s.primal_infeasibility, s.dual_infeasibility, s.relative_gap});
    };
    if (q.status != SolveStatus::NumericalLimit || score(q) <= score(r)) return q;
  }
  return r;
}

Eigen::MatrixXd block_value(const Block& b, const std::vector<double>& y) {
  if (b.kind == ConeKind::PSD) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(b.size, b.size);
    add_scaled(m, b.constant, 1.0);
    for (std::size_t i = 0; i < b.coefficients.size() && i < y.size(); ++i)
      add_scaled(m, b.coefficients[i], y[i]);
    return m;
  }
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(b.size, 1);
  for (const auto& e : b.constant) v(e.row, 0) += e.value;
  for (std::size_t i = 0; i < b.coefficients.size() && i < y.size(); ++i)
    for (const auto& e : b.coefficients[i]) v(e.row, 0) += y[i] * e.value;
  return v;
}

}  // namespace volmom::conic
