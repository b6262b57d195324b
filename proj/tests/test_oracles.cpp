#include <cmath>
#include <numbers>

#include "doctest.h"
#include "volmom/oracles.hpp"

using namespace volmom;

TEST_CASE("fixtures") {
  CHECK(fixture("interval").exact_volume == 0.5);
  CHECK(fixture("bean").exact_volume == doctest::Approx(7 * std::sqrt(3.0) * std::numbers::pi / 36));
  CHECK(fixture("bean").exact_volume == doctest::Approx(1.0581).epsilon(1e-4));
  CHECK(fixture("folium").exact_volume == doctest::Approx(std::numbers::pi / 2));
  CHECK(fixtures().size() == 3);
  CHECK_THROWS_AS(fixture("nope"), Error);
}

TEST_CASE("monte carlo volume") {
  const McEstimate i = mc_volume(fixture("interval").spec, 200000, 5);
  CHECK(std::abs(static_cast<double>(i.hits) / i.samples - 0.25) < 0.01);
  CHECK(std::abs(i.volume - 0.5) <= 3 * i.std_error);
  CHECK(i.ci_low < 0.5);
  CHECK(i.ci_high > 0.5);
  CHECK(i.ci_high - i.volume == doctest::Approx(kZ99 * i.std_error));
  CHECK_THROWS_AS(mc_volume(fixture("interval").spec, 10, 5), Error);
}

TEST_CASE("monte carlo is deterministic per seed") {
  const auto& s = fixture("bean").spec;
  const McEstimate a = mc_estimate(s, 100000, 42, 2);
  const McEstimate b = mc_estimate(s, 100000, 42, 2);
  const McEstimate c = mc_estimate(s, 100000, 43, 2);
  CHECK(a.hits == b.hits);
  CHECK(a.moments.values == b.moments.values);
  CHECK(a.hits != c.hits);
  const McEstimate longer = mc_estimate(s, 165536, 42, 0);
  const McEstimate first = mc_estimate(s, 65536, 42, 0);
  CHECK(longer.hits >= first.hits);
}

TEST_CASE("quadrature moments of the interval") {
  const QuadMoments q = quad_moments_on_K(fixture("interval").spec, 4);
  CHECK(q.moments.values[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(q.moments.values[1] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(q.moments.values[2] == doctest::Approx(1.0 / 24).epsilon(1e-12));
  CHECK(q.error_estimate < 1e-12);
}

TEST_CASE("quadrature matches fixture volumes and ratios") {
  for (const Fixture& f : fixtures()) {
    const QuadMoments q = quad_moments_on_K(f.spec, 4);
    CHECK(std::abs(q.moments.mass() - f.exact_volume) < 1e-3);
    CHECK(q.error_estimate < 1e-3);
    for (const auto& r : f.ratios)
      CHECK(std::abs(q.moments[r.alpha] / q.moments.mass() - r.value) < 1e-3);
  }
}

TEST_CASE("property: monte carlo and quadrature agree") {
  for (const Fixture& f : fixtures()) {
    const McEstimate mc = mc_estimate(f.spec, 400000, 17, 2);
    const QuadMoments q = quad_moments_on_K(f.spec, 2);
    CHECK(std::abs(mc.volume - q.moments.mass()) <= 4 * mc.std_error);
    for (std::size_t k = 0; k < q.moments.values.size(); ++k)
      CHECK(std::abs(mc.moments.values[k] - q.moments.values[k]) <= 4 * mc.moment_std_error[k] + 1e-12);
  }
}

TEST_CASE("ball bounding sets are respected") {
  ProblemSpec s;
  s.n = 2;
  s.bounding = {BoundingSet::Kind::Ball, 2, 1.0};
  s.constraints = {parse_polynomial("x1", 2)};
  const QuadMoments q = quad_moments_on_K(s, 2);
  CHECK(q.moments.mass() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
  const McEstimate mc = mc_volume(s, 100000, 3);
  CHECK(std::abs(mc.volume - std::numbers::pi / 2) <= 4 * mc.std_error);
}
