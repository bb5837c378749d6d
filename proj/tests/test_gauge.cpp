#include <doctest.h>

#include <cmath>

#include "minkdev/deviations.hpp"
#include "minkdev/errors.hpp"
#include "minkdev/gauge.hpp"
#include "minkdev/random.hpp"
#include "minkdev/sets.hpp"

using namespace minkdev;

namespace {

const MarketSpace binary({0.25, 0.75});

// sigma on two outcomes: sqrt(p q) |a - b|.
double sigma_binary(const Position& x) { return std::sqrt(0.25 * 0.75) * std::abs(x[0] - x[1]); }

AcceptanceSet sigma_unit() {
  return sublevel_set(binary, builtin_deviation(MeasureKind::std_dev), 1.0);
}

}  // namespace

TEST_CASE("gauge of the sigma unit set reproduces sigma") {
  const GaugeResult r = minkowski_gauge(sigma_unit(), Position{0.0, 8.0 / std::sqrt(3.0)});
  CHECK(std::abs(r.value.value() - 2.0) < 1e-9);
  REQUIRE(r.bracket);
  CHECK(r.bracket->first <= r.value.value());
  CHECK(r.bracket->second >= r.value.value());
  CHECK(r.attained == Tri::yes);
  REQUIRE(r.boundary_point);
  CHECK(sigma_unit().contains(*r.boundary_point));
}

TEST_CASE("zero position and degenerate sets") {
  CHECK(minkowski_gauge(sigma_unit(), Position{0, 0}).value.value() == 0.0);
  CHECK(minkowski_gauge(empty_set(binary), Position{0, 0}).value.is_infinite());
  // Only constants acceptable: every non-constant position has infinite gauge.
  CHECK(minkowski_gauge(constants_set(binary), Position{1, 2}).value.is_infinite());
  CHECK(minkowski_gauge(constants_set(binary), Position{3, 3}).value.value() == 0.0);
}

TEST_CASE("cogauge conventions") {
  CHECK(cogauge(whole_space(binary), Position{1, -2}).value.is_infinite());
  CHECK(cogauge(empty_set(binary), Position{1, -2}).value.value() == 0.0);
}

TEST_CASE("cogauge of the complement equals the gauge") {
  const AcceptanceSet a = sigma_unit();
  const AcceptanceSet c = complement(a);
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(trial_seed(2, t));
    const Position x = random_position(rng, 2, 5.0);
    const double g = minkowski_gauge(a, x).value.value();
    const double w = cogauge(c, x).value.value();
    CHECK(std::abs(g - w) <= 1e-9 * std::max(1.0, g));
    CHECK(std::abs(g - sigma_binary(x)) <= 1e-9 * std::max(1.0, g));
  }
}

TEST_CASE("positive homogeneity along rays") {
  const AcceptanceSet a = sigma_unit();
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng(trial_seed(4, t));
    const Position x = random_position(rng, 2, 5.0);
    const double g = minkowski_gauge(a, x).value.value();
    for (double lambda : {0.5, 2.0, 7.0}) {
      const double gl = minkowski_gauge(a, lambda * x).value.value();
      CHECK(std::abs(gl - lambda * g) <= 1e-8 * std::max(1.0, lambda * g));
    }
  }
}

TEST_CASE("interval structure and boundary points on closed star-shaped sets") {
  const AcceptanceSet a = sublevel_set(binary, builtin_deviation(MeasureKind::lower_range), 1.0);
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(trial_seed(6, t));
    const Position x = random_position(rng, 2, 5.0);
    const GaugeResult r = minkowski_gauge(a, x);
    const double g = r.value.value();
    if (!(g > 0.0) || std::isinf(g)) continue;
    CHECK(a.contains(x / (g * (1 + 1e-6))));
    CHECK_FALSE(a.contains(x / (g * (1 - 1e-6))));
    REQUIRE(r.boundary_point);
    CHECK(a.contains(*r.boundary_point));
    CHECK_FALSE(a.contains(*r.boundary_point / (1 - 1e-6)));
  }
}

TEST_CASE("oracle budget exhaustion carries the bracket") {
  GaugeOptions opts;
  opts.max_oracle_calls = 5;
  try {
    (void)minkowski_gauge(sigma_unit(), Position{0.0, 1.0}, opts);
    FAIL("expected budget error");
  } catch (const GaugeBudgetError& e) {
    CHECK(e.lo() <= e.hi());
  }
  opts.m_min = 2.0;
  opts.m_cap = 1.0;
  CHECK_THROWS_AS(minkowski_gauge(sigma_unit(), Position{0.0, 1.0}, opts), InputError);
}

TEST_CASE("non-star-shaped sets fall back to a labelled grid scan") {
  // Annulus-like set 1 <= ||X||_2 <= 2: not star-shaped.
  const AcceptanceSet ring(binary,
                           [](const Position& x) {
                             const double r = lp_norm(binary, x, 2.0);
                             return r >= 1.0 && r <= 2.0;
                           },
                           SetFlags{}, "ring");
  const Position x{4.0, 4.0};  // norm 4: X/m in ring for m in [2, 4]
  const GaugeResult r = minkowski_gauge(ring, x);
  CHECK(r.approximate);
  CHECK(std::abs(r.value.value() - 2.0) < 1e-8);
}

TEST_CASE("wrapped gauge carries axioms and reproduces sigma") {
  const DeviationFunctional d = deviation_from_set(sigma_unit());
  CHECK(d.axioms().nonneg == Tri::yes);
  CHECK(d.axioms().translation_insensitive == Tri::yes);
  CHECK(d.axioms().convex == Tri::yes);
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(trial_seed(8, t));
    const Position x = random_position(rng, 2, 5.0);
    const double c = uniform(rng, -10.0, 10.0);
    CHECK(std::abs(d(binary, x).value() - sigma_binary(x)) < 1e-8);
    CHECK(std::abs(d(binary, x + c).value() - d(binary, x).value()) < 1e-8);
  }
  CHECK(d(binary, Position{2.5, 2.5}).value() == 0.0);
}

TEST_CASE("shift infimum of the L2 ball is sigma") {
  const AcceptanceSet ball = norm_ball(binary, 2.0, 1.0);
  const ExtendedValue v = shift_infimum_gauge(ball, Position{0.0, 4.0 / std::sqrt(3.0)});
  CHECK(std::abs(v.value() - 1.0) < 1e-8);
  CHECK(shift_infimum_gauge(ball, Position{3.0, 3.0}).value() == 0.0);
}
