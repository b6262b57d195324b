#include "volmom/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "volmom/quadrature.hpp"

namespace volmom {

namespace {

constexpr std::size_t kShard = 65536;

bool in_k(const std::vector<MultiPoly>& g, std::span<const double> x) {
  return std::all_of(g.begin(), g.end(), [&](const MultiPoly& p) { return p.eval(x) >= 0.0; });
}

std::vector<MultiPoly> monomial_constraints(const ProblemSpec& spec) {
  std::vector<MultiPoly> g;
  for (const auto& c : spec.constraints) g.push_back(convert(c, Basis::Monomial));
  return g;
}

}  // namespace

McEstimate mc_estimate(const ProblemSpec& spec, std::size_t samples, std::uint64_t seed,
                       int moment_degree) {
  spec.validate();
  if (samples < 1000) throw Error("mc_estimate: need at least 1000 samples");
  if (moment_degree < 0) throw Error("mc_estimate: negative moment degree");
  const std::size_t n = spec.n;
  const BoundingSet& b = spec.bounding;
  const std::vector<MultiPoly> g = monomial_constraints(spec);
  const std::vector<MultiIndex> idx = index_set(n, moment_degree);
  std::vector<double> sum(idx.size(), 0.0), sumsq(idx.size(), 0.0);

  McEstimate out;
  out.samples = samples;
  std::vector<double> x(n);
  for (std::size_t start = 0, shard = 0; start < samples; start += kShard, ++shard) {
    std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(shard)};
    std::mt19937_64 gen(sq);
    const auto uniform = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    const std::size_t count = std::min(kShard, samples - start);
    for (std::size_t s = 0; s < count; ++s) {
      do {
        for (auto& v : x) v = b.a * (2.0 * uniform() - 1.0);
      } while (!b.contains(x));
      if (!in_k(g, x)) continue;
      ++out.hits;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        double m = 1.0;
        for (std::size_t i = 0; i < n; ++i) m *= std::pow(x[i], idx[k][i]);
        sum[k] += m;
        sumsq[k] += m * m;
      }
    }
  }
  const double vb = b.volume();
  const double ns = static_cast<double>(samples);
  const double p = static_cast<double>(out.hits) / ns;
  out.volume = vb * p;
  out.std_error = vb * std::sqrt(p * (1.0 - p) / ns);
  out.ci_low = out.volume - kZ99 * out.std_error;
  out.ci_high = out.volume + kZ99 * out.std_error;
  out.moments = MomentVector(n, moment_degree, Basis::Monomial);
  out.moment_std_error.resize(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double mean = sum[k] / ns;
    const double var = std::max(0.0, sumsq[k] / ns - mean * mean);
    out.moments.values[k] = vb * mean;
    out.moment_std_error[k] = vb * std::sqrt(var / ns);
  }
  return out;
}

McEstimate mc_volume(const ProblemSpec& spec, std::size_t samples, std::uint64_t seed) {
  return mc_estimate(spec, samples, seed, 0);
}

namespace {

// Coefficients c_k of x_last^k after fixing the leading coordinates.
std::vector<double> restrict_last(const MultiPoly& p, std::span<const double> lead) {
  const std::size_t last = p.dimension() - 1;
  std::vector<double> c(static_cast<std::size_t>(std::max(p.degree(), 0)) + 1, 0.0);
  for (const auto& [a, v] : p.terms()) {
    double m = v;
    for (std::size_t i = 0; i < last; ++i) m *= std::pow(lead[i], a[i]);
    c[a[last]] += m;
  }
  return c;
}

// Real parts of the roots in (lo, hi) of sum c_k t^k. Nearly real pairs are kept;
// a spurious breakpoint only splits a section.
void real_roots(std::vector<double> c, double lo, double hi, std::vector<double>& out) {
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return;
  while (!c.empty() && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg < 1) return;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  const auto eval = [&](double t) {
    double r = 0.0;
    for (int k = deg; k >= 0; --k) r = r * t + c[k];
    return r;
  };
  const auto deriv = [&](double t) {
    double r = 0.0;
    for (int k = deg; k >= 1; --k) r = r * t + k * c[k];
    return r;
  };
  for (int i = 0; i < deg; ++i) {
    const std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z))) continue;
    double t = z.real();
    for (int it = 0; it < 3; ++it) {
      const double d = deriv(t);
      if (d == 0.0) break;
      const double step = eval(t) / d;
      if (!std::isfinite(step) || std::abs(step) > 1e-3 * (1.0 + std::abs(t))) break;
      t -= step;
    }
    if (t > lo && t < hi) out.push_back(t);
  }
}

struct Sectioner {
  std::vector<MultiPoly> g;  // constraints plus the ball polynomial for a ball B
  double a = 1.0;
  int degree = 0;
  QuadratureRule inner;  // on [-1, 1], exact to degree `degree`

  // s[k] = integral of t^k over {t in [-a, a] : all g(lead, t) >= 0}. Returns
  // the number of sections inside K.
  int sections(std::span<const double> lead, std::vector<double>& s) const {
    std::fill(s.begin(), s.end(), 0.0);
    int count = 0;
    std::vector<double> cuts{-a, a};
    for (const auto& p : g) real_roots(restrict_last(p, lead), -a, a, cuts);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> x(lead.begin(), lead.end());
    x.push_back(0.0);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double lo = cuts[k], hi = cuts[k + 1];
      if (hi - lo <= 0.0) continue;
      x.back() = 0.5 * (lo + hi);
      if (!in_k(g, x)) continue;
      ++count;
      const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
      for (std::size_t q = 0; q < inner.nodes.size(); ++q) {
        const double t = mid + half * inner.nodes[q];
        const double w = half * inner.weights[q];
        double tk = 1.0;
        for (int e = 0; e <= degree; ++e) {
          s[e] += w * tk;
          tk *= t;
        }
      }
    }
    return count;
  }
};

constexpr int kScan = 4096;

// Points of [-a, a] where the number of sections along the last axis changes,
// located by a uniform scan and bisection. The section integrals are smooth
// between consecutive breakpoints.
std::vector<double> breakpoints(const Sectioner& sec, std::vector<double> lead) {
  std::vector<double> s(sec.degree + 1);
  lead.push_back(0.0);
  const auto count_at = [&](double t) {
    lead.back() = t;
    return sec.sections(lead, s);
  };
  std::vector<double> out{-sec.a};
  double prev_t = -sec.a;
  int prev_c = count_at(prev_t);
  for (int i = 1; i <= kScan; ++i) {
    const double t = -sec.a + 2.0 * sec.a * i / kScan;
    const int c = count_at(t);
    if (c != prev_c) {
      double lo = prev_t, hi = t;
      for (int it = 0; it < 60 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (count_at(mid) == prev_c ? lo : hi) = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    prev_t = t;
    prev_c = c;
  }
  out.push_back(sec.a);
  return out;
}

MomentVector sectioned_moments(const Sectioner& sec, std::size_t n, int nodes) {
  MomentVector y(n, sec.degree, Basis::Monomial);
  const std::vector<MultiIndex> idx = index_set(n, sec.degree);
  std::vector<double> s(sec.degree + 1);
  if (n == 1) {
    sec.sections({}, s);
    for (std::size_t k = 0; k < idx.size(); ++k) y.values[k] = s[idx[k][0]];
    return y;
  }
  // Plain tensor rule on axes 0..n-3, piecewise rule on axis n-2.
  const QuadratureRule outer = gauss_legendre(nodes, -sec.a, sec.a);
  const QuadratureRule unit = gauss_legendre(nodes);
  const std::size_t tensor_dims = n - 2;
  std::vector<int> pos(tensor_dims, 0);
  std::vector<double> lead(n - 1);
  while (true) {
    double w_tensor = 1.0;
    for (std::size_t i = 0; i < tensor_dims; ++i) {
      lead[i] = outer.nodes[pos[i]];
      w_tensor *= outer.weights[pos[i]];
    }
    const std::vector<double> cuts =
        breakpoints(sec, std::vector<double>(lead.begin(), lead.begin() + tensor_dims));
    for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
      const double half = 0.5 * (cuts[piece + 1] - cuts[piece]);
      const double mid = 0.5 * (cuts[piece + 1] + cuts[piece]);
      if (half <= 0.0) continue;
      for (std::size_t q = 0; q < unit.nodes.size(); ++q) {
        lead[n - 2] = mid + half * unit.nodes[q];
        const double w = w_tensor * half * unit.weights[q];
        sec.sections(lead, s);
        for (std::size_t k = 0; k < idx.size(); ++k) {
          double m = w * s[idx[k][n - 1]];
          for (std::size_t i = 0; i + 1 < n; ++i) m *= std::pow(lead[i], idx[k][i]);
          y.values[k] += m;
        }
      }
    }
    std::size_t j = 0;
    while (j < tensor_dims && ++pos[j] == nodes) pos[j++] = 0;
    if (j == tensor_dims) break;
  }
  return y;
}

}  // namespace

QuadMoments quad_moments_on_K(const ProblemSpec& spec, int degree, int nodes) {
  spec.validate();
  if (degree < 0) throw Error("quad_moments_on_K: negative degree");
  if (nodes < 1) throw Error("quad_moments_on_K: need at least one node per axis");
  const std::size_t n = spec.n;
  Sectioner sec;
  sec.g = monomial_constraints(spec);
  sec.a = spec.bounding.a;
  sec.degree = degree;
  sec.inner = gauss_legendre(degree / 2 + 1);
  if (spec.bounding.kind == BoundingSet::Kind::Ball) {
    MultiPoly ball = MultiPoly::constant(n, sec.a * sec.a);
    for (std::size_t i = 0; i < n; ++i) {
      const MultiPoly xi = MultiPoly::variable(n, i);
      ball = ball - multiply(xi, xi);
    }
    sec.g.push_back(ball);
  }
  QuadMoments out;
  out.nodes = nodes;
  const MomentVector coarse = sectioned_moments(sec, n, nodes);
  out.moments = n == 1 ? coarse : sectioned_moments(sec, n, 2 * nodes);
  for (std::size_t k = 0; k < coarse.values.size(); ++k)
    out.error_estimate =
        std::max(out.error_estimate, std::abs(coarse.values[k] - out.moments.values[k]));
  return out;
}

std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  {
    Fixture f;
    f.name = "interval";
    f.spec.name = "interval";
    f.spec.n = 1;
    f.spec.bounding = {BoundingSet::Kind::Box, 1, 1.0};
    f.spec.constraints.push_back(parse_polynomial("0.5*x1 - x1^2", 1));
    f.exact_volume = 0.5;
    f.ratios = {{MultiIndex{1}, 0.25}, {MultiIndex{2}, 1.0 / 12.0}};
    out.push_back(std::move(f));
  }
  {
    Fixture f;
    f.name = "bean";
    f.spec.name = "bean";
    f.spec.n = 2;
    f.spec.bounding = {BoundingSet::Kind::Box, 2, 1.0};
    f.spec.constraints.push_back(
        parse_polynomial("x1^3 + x1*x2^2 - x1^4 - x1^2*x2^2 - x2^4", 2));
    f.exact_volume = 7.0 * std::sqrt(3.0) * std::numbers::pi / 36.0;
    f.ratios = {{MultiIndex{1, 0}, 23.0 / 42.0},
                {MultiIndex{0, 1}, 0.0},
                {MultiIndex{2, 0}, 23.0 / 63.0},
                {MultiIndex{1, 1}, 0.0},
                {MultiIndex{0, 2}, 113.0 / 1008.0}};
    out.push_back(std::move(f));
  }
  {
    Fixture f;
    f.name = "folium";
    f.spec.name = "folium";
    f.spec.n = 2;
    f.spec.bounding = {BoundingSet::Kind::Ball, 2, 1.0};
    f.spec.constraints.push_back(
        parse_polynomial("-(x1^2 + x2^2)^3 + 4*x1^2*x2^2", 2));
    f.exact_volume = std::numbers::pi / 2.0;
    // rho = |sin 2 theta|: y20 = y02 = (1/4) int sin^4(2t) cos^2(t) dt = 3 pi / 32.
    f.ratios = {{MultiIndex{1, 0}, 0.0},
                {MultiIndex{0, 1}, 0.0},
                {MultiIndex{2, 0}, 3.0 / 16.0},
                {MultiIndex{1, 1}, 0.0},
                {MultiIndex{0, 2}, 3.0 / 16.0}};
    out.push_back(std::move(f));
  }
  return out;
}

const Fixture& fixture(const std::string& name) {
  static const std::vector<Fixture> all = fixtures();
  for (const auto& f : all)
    if (f.name == name) return f;
  throw Error("unknown fixture '" + name + "'");
}

}  // namespace volmom
