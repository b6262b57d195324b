#pragma once

#include <vector>

namespace volmom {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `count` nodes on [lo, hi]; exact for polynomials
/// of degree <= 2*count - 1.
QuadratureRule gauss_legendre(int count, double lo = -1.0, double hi = 1.0);

}  // namespace volmom
