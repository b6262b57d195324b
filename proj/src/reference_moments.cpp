#include "volmom/reference_moments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "volmom/format.hpp"
#include "volmom/quadrature.hpp"

namespace volmom {

double BoundingSet::volume() const {
  if (kind == Kind::Box) return std::pow(2.0 * a, static_cast<double>(n));
  const double half_n = 0.5 * static_cast<double>(n);
  return std::pow(std::numbers::pi, half_n) / std::tgamma(half_n + 1.0) *
         std::pow(a, static_cast<double>(n));
}

bool BoundingSet::contains(std::span<const double> x) const {
  if (kind == Kind::Box)
    return std::all_of(x.begin(), x.end(), [&](double v) { return std::abs(v) <= a; });
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return r2 <= a * a;
}

double BoundingSet::enclosing_radius() const {
  return kind == Kind::Box ? a * std::sqrt(static_cast<double>(n)) : a;
}

double MomentVector::riesz(const MultiPoly& p) const {
  if (p.dimension() != n) throw Error("riesz: dimension mismatch");
  const MultiPoly q = convert(p, basis);
  if (q.degree() > degree)
    throw Error("riesz: polynomial degree " + std::to_string(q.degree()) +
                " exceeds moment degree " + std::to_string(degree));
  double s = 0.0;
  for (const auto& [a, c] : q.terms()) s += c * values[rank(a)];
  return s;
}

MomentVector MomentVector::truncated(int d) const {
  if (d > degree) throw Error("truncated: requested degree exceeds available moments");
  MomentVector r(n, d, basis);
  std::copy_n(values.begin(), r.values.size(), r.values.begin());
  return r;
}

MomentVector MomentVector::operator-(const MomentVector& o) const {
  if (o.n != n || o.degree != degree || o.basis != basis)
    throw Error("moment vector shape mismatch");
  MomentVector r(*this);
  for (std::size_t i = 0; i < values.size(); ++i) r.values[i] -= o.values[i];
  return r;
}

MomentVector MomentVector::operator*(double s) const {
  MomentVector r(*this);
  for (double& v : r.values) v *= s;
  return r;
}

MomentVector box_moments(std::size_t n, int degree, double a) {
  MomentVector y(n, degree, Basis::Monomial);
  const auto idx = index_set(n, degree);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    double v = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const int k = idx[r][j];
      if (k % 2 == 1) {
        v = 0.0;
        break;
      }
      v *= 2.0 * std::pow(a, k + 1) / (k + 1.0);
    }
    y.values[r] = v;
  }
  return y;
}

MomentVector ball_moments(std::size_t n, int degree, double a) {
  MomentVector y(n, degree, Basis::Monomial);
  const auto idx = index_set(n, degree);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto& k = idx[r];
    if (std::any_of(k.exponents().begin(), k.exponents().end(), [](int e) { return e % 2; }))
      continue;
    double log_v = -std::lgamma(0.5 * (k.degree() + static_cast<double>(n)) + 1.0);
    for (std::size_t j = 0; j < n; ++j) log_v += std::lgamma(0.5 * (k[j] + 1.0));
    y.values[r] = std::exp(log_v) * std::pow(a, k.degree() + static_cast<double>(n));
  }
  return y;
}

MomentVector reference_moments(const BoundingSet& b, int degree) {
  return b.kind == BoundingSet::Kind::Box ? box_moments(b.n, degree, b.a)
                                          : ball_moments(b.n, degree, b.a);
}

namespace {

struct WeightedPoint {
  std::vector<double> x;
  double weight;
};

// Tensor Gauss-Legendre on the box. On the disk: Gauss-Legendre in the radius
// with the Jacobian r folded into the weights, times an equispaced angular rule.
std::vector<WeightedPoint> cubature(const BoundingSet& b, int nodes) {
  std::vector<WeightedPoint> pts;
  if (b.kind == BoundingSet::Kind::Box) {
    const auto rule = gauss_legendre(nodes, -b.a, b.a);
    const std::size_t total = static_cast<std::size_t>(std::pow(nodes, b.n));
    pts.reserve(total);
    std::vector<int> digit(b.n, 0);
    for (std::size_t t = 0; t < total; ++t) {
      WeightedPoint p{std::vector<double>(b.n), 1.0};
      for (std::size_t j = 0; j < b.n; ++j) {
        p.x[j] = rule.nodes[digit[j]];
        p.weight *= rule.weights[digit[j]];
      }
      pts.push_back(std::move(p));
      for (std::size_t j = 0; j < b.n; ++j) {
        if (++digit[j] < nodes) break;
        digit[j] = 0;
      }
    }
    return pts;
  }
  if (b.n != 2) throw Error("weighted_moments: ball cubature is implemented for n = 2 only");
  const auto radial = gauss_legendre(nodes, 0.0, b.a);
  const int angular = 2 * nodes + 2;
  for (int i = 0; i < nodes; ++i) {
    for (int t = 0; t < angular; ++t) {
      const double th = 2.0 * std::numbers::pi * t / angular;
      const double r = radial.nodes[i];
      pts.push_back({{r * std::cos(th), r * std::sin(th)},
                     radial.weights[i] * r * 2.0 * std::numbers::pi / angular});
    }
  }
  return pts;
}

MomentVector integrate(const WeightFunction& w, const BoundingSet& b, int degree, int nodes,
                       bool& negative_seen) {
  MomentVector y(b.n, degree, Basis::Monomial);
  const auto idx = index_set(b.n, degree);
  for (const auto& p : cubature(b, nodes)) {
    const double wv = w(p.x);
    if (!std::isfinite(wv)) throw Error("weighted_moments: non-finite weight value");
    if (wv < 0.0) negative_seen = true;
    const auto mono = basis_vector(p.x, degree, Basis::Monomial);
    const double f = p.weight * wv;
    for (std::size_t r = 0; r < idx.size(); ++r) y.values[r] += f * mono[r];
  }
  return y;
}

}  // namespace

WeightedMoments weighted_moments(const WeightFunction& w, const BoundingSet& b, int degree,
                                 int nodes) {
  if (nodes <= 0) nodes = degree / 2 + 2;
  WeightedMoments out;
  out.moments = integrate(w, b, degree, nodes, out.negative_weight_seen);
  const auto fine = integrate(w, b, degree, 2 * nodes, out.negative_weight_seen);
  for (std::size_t r = 0; r < fine.values.size(); ++r)
    out.error_estimate =
        std::max(out.error_estimate, std::abs(fine.values[r] - out.moments.values[r]));
  return out;
}

WeightedMoments weighted_moments(const MultiPoly& w, const BoundingSet& b, int degree,
                                 int nodes) {
  if (nodes <= 0) nodes = (degree + std::max(w.degree(), 0)) / 2 + 2;
  return weighted_moments([&w](std::span<const double> x) { return w.eval(x); }, b, degree,
                          nodes);
}

MomentVector chebyshev_moments(const MomentVector& base) {
  if (base.basis != Basis::Monomial) throw Error("chebyshev_moments: input must be monomial");
  MomentVector out(base.n, base.degree, Basis::Chebyshev);
  const auto idx = index_set(base.n, base.degree);
  for (std::size_t r = 0; r < idx.size(); ++r)
    out.values[r] = base.riesz(convert(MultiPoly::term(idx[r], 1.0, Basis::Chebyshev),
                                       Basis::Monomial));
  return out;
}

MomentVector monomial_moments(const MomentVector& cheb) {
  if (cheb.basis != Basis::Chebyshev) throw Error("monomial_moments: input must be Chebyshev");
  MomentVector out(cheb.n, cheb.degree, Basis::Monomial);
  const auto idx = index_set(cheb.n, cheb.degree);
  for (std::size_t r = 0; r < idx.size(); ++r)
    out.values[r] = cheb.riesz(MultiPoly::term(idx[r], 1.0, Basis::Monomial));
  return out;
}

void write_moments_csv(std::ostream& os, const MomentVector& y) {
  for (std::size_t j = 0; j < y.n; ++j) os << "alpha_" << (j + 1) << ",";
  os << "value\n";
  const auto idx = index_set(y.n, y.degree);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t j = 0; j < y.n; ++j) os << idx[r][j] << ",";
    os << format_double(y.values[r]) << "\n";
  }
}

MomentVector read_moments_csv(std::istream& is, Basis basis) {
  std::string line;
  if (!std::getline(is, line)) throw Error("moments csv: empty input");
  // Leading alpha_* columns, then value; later columns are ignored.
  std::size_t n = 0;
  {
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',') && cell.rfind("alpha", 0) == 0) ++n;
  }
  if (n == 0) throw Error("moments csv: header needs alpha columns");
  std::vector<std::pair<MultiIndex, double>> rows;
  int max_deg = 0;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string cell;
    MultiIndex a(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::getline(ss, cell, ','))
        throw Error("moments csv: short row at line " + std::to_string(lineno));
      a[j] = std::stoi(cell);
      if (a[j] < 0) throw Error("moments csv: negative exponent at line " + std::to_string(lineno));
    }
    if (!std::getline(ss, cell, ',')) throw Error("moments csv: missing value at line " + std::to_string(lineno));
    rows.emplace_back(a, std::stod(cell));
    max_deg = std::max(max_deg, a.degree());
  }
  MomentVector y(n, max_deg, basis);
  if (rows.size() != y.values.size())
    throw Error("moments csv: expected " + std::to_string(y.values.size()) +
                " rows for a complete degree-" + std::to_string(max_deg) + " table, got " +
                std::to_string(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rank(rows[r].first) != r) throw Error("moments csv: rows not in graded-lex order");
    y.values[r] = rows[r].second;
  }
  return y;
}

}  // namespace volmom
