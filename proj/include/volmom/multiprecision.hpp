#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

namespace volmom {

/// IEEE binary128 (113-bit significand), used for the quad-precision solve.
using Quad = boost::multiprecision::float128;

/// Binary float with roughly 200 significant decimal digits; enough to resolve
/// the extreme eigenvalues of power-basis Hankel matrices up to size ~100.
using HighPrecision = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<200>, boost::multiprecision::et_off>;

}  // namespace volmom

// Eigen 3.4 asks NumTraits for infinity() inside hypot, which the Boost 1.74
// adaptor does not provide; supply finite-only versions for our scalars.
namespace Eigen::internal {

template <>
inline volmom::Quad positive_real_hypot<volmom::Quad>(const volmom::Quad& x,
                                                      const volmom::Quad& y) {
  return boost::multiprecision::hypot(x, y);
}

template <>
inline volmom::HighPrecision positive_real_hypot<volmom::HighPrecision>(
    const volmom::HighPrecision& x, const volmom::HighPrecision& y) {
  return boost::multiprecision::hypot(x, y);
}

}  // namespace Eigen::internal
