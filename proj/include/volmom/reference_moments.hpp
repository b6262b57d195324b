#pragma once

#include <cmath>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "volmom/polynomial.hpp"

namespace volmom {

/// Simple set containing K whose Lebesgue moments are known in closed form.
struct BoundingSet {
  enum class Kind { Box, Ball };
  Kind kind = Kind::Box;
  std::size_t n = 1;
  /// Half-width of the box [-a, a]^n or radius of the ball.
  double a = 1.0;

  double volume() const;
  bool contains(std::span<const double> x) const;
  /// Radius of a Euclidean ball centered at the origin containing the set.
  double enclosing_radius() const;
};

/// Truncated moment sequence over index_set(n, degree), graded-lex order.
/// In the Chebyshev basis entry a holds L(T_a).
struct MomentVector {
  std::size_t n = 1;
  int degree = 0;
  Basis basis = Basis::Monomial;
  std::vector<double> values;

  MomentVector() = default;
  MomentVector(std::size_t n_, int degree_, Basis basis_)
      : n(n_), degree(degree_), basis(basis_), values(monomial_count(n_, degree_), 0.0) {}

  double mass() const { return values.at(0); }
  double operator[](const MultiIndex& a) const { return values.at(rank(a)); }
  double& operator[](const MultiIndex& a) { return values.at(rank(a)); }

  /// Riesz functional L_y(p); p is converted to this vector's basis first.
  double riesz(const MultiPoly& p) const;

  /// First monomial_count(n, d) entries.
  MomentVector truncated(int d) const;

  MomentVector operator-(const MomentVector& o) const;
  MomentVector operator*(double s) const;
};

/// Unnormalized Lebesgue moments of [-a, a]^n: prod_j a^(k+1) (1+(-1)^k)/(1+k).
MomentVector box_moments(std::size_t n, int degree, double a = 1.0);

/// Lebesgue moments of the Euclidean ball of radius a in R^n:
/// prod_i Gamma((k_i+1)/2) / Gamma((|k|+n)/2 + 1) * a^(|k|+n) for all-even k.
MomentVector ball_moments(std::size_t n, int degree, double a = 1.0);

MomentVector reference_moments(const BoundingSet& b, int degree);

using WeightFunction = std::function<double(std::span<const double>)>;

struct WeightedMoments {
  MomentVector moments;
  /// max |y(nodes) - y(2 nodes)|, an a-posteriori quadrature error estimate.
  double error_estimate = 0.0;
  /// Set when sampling found a negative weight value on B.
  bool negative_weight_seen = false;
};

/// Moments of w(x) dx on B by tensor Gauss-Legendre (box) or polar Gauss
/// (disk). `nodes` <= 0 selects degree/2 + 2 per axis.
WeightedMoments weighted_moments(const WeightFunction& w, const BoundingSet& b, int degree,
                                 int nodes = 0);
WeightedMoments weighted_moments(const MultiPoly& w, const BoundingSet& b, int degree,
                                 int nodes = 0);

/// Re-expresses a power-basis moment vector against tensor Chebyshev elements.
MomentVector chebyshev_moments(const MomentVector& base);
/// Inverse of chebyshev_moments.
MomentVector monomial_moments(const MomentVector& cheb);

/// CSV with columns alpha_1..alpha_n,value in graded-lex row order.
void write_moments_csv(std::ostream& os, const MomentVector& y);
MomentVector read_moments_csv(std::istream& is, Basis basis = Basis::Monomial);

}  // namespace volmom
