#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "volmom/sdp_hierarchy.hpp"

namespace volmom {

struct McEstimate {
  std::size_t samples = 0;
  std::size_t hits = 0;
  /// vol(B) * hits / samples.
  double volume = 0.0;
  double std_error = 0.0;
  /// Normal-approximation 99% interval.
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// Sample means of vol(B) * x^a * 1_K(x) when a moment degree was requested.
  MomentVector moments;
  std::vector<double> moment_std_error;
};

inline constexpr double kZ99 = 2.5758293035489004;

/// Uniform samples on B (rejection from the cube for a ball). Samples are drawn
/// in shards of 65536 with per-shard generators seeded from (seed, shard), so
/// results depend only on the seed and the sample count.
McEstimate mc_estimate(const ProblemSpec& spec, std::size_t samples, std::uint64_t seed,
                       int moment_degree = 0);
McEstimate mc_volume(const ProblemSpec& spec, std::size_t samples, std::uint64_t seed);

struct QuadMoments {
  MomentVector moments;
  /// max_a |y_a(nodes) - y_a(2 nodes)|.
  double error_estimate = 0.0;
  int nodes = 0;
};

/// Power-basis moments of Lebesgue measure on K up to `degree`. Outer axes use
/// tensor Gauss-Legendre with `nodes` points; along the last axis the set is cut
/// at the real roots of every g_j (and of the ball polynomial), and each section
/// inside K is integrated exactly. Values come from the 2 * nodes rule.
QuadMoments quad_moments_on_K(const ProblemSpec& spec, int degree, int nodes = 64);

struct RatioFixture {
  MultiIndex alpha;
  /// y_alpha / y_0.
  double value;
};

struct Fixture {
  std::string name;
  ProblemSpec spec;
  double exact_volume = 0.0;
  std::vector<RatioFixture> ratios;
};

/// interval [0, 1/2] in [-1, 1], bean in [-1, 1]^2, folium in the unit disk.
std::vector<Fixture> fixtures();
const Fixture& fixture(const std::string& name);

}  // namespace volmom
