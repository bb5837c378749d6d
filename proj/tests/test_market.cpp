#include <doctest.h>

#include <cmath>

#include "minkdev/errors.hpp"
#include "minkdev/market.hpp"
#include "minkdev/random.hpp"

using namespace minkdev;

namespace {
const MarketSpace binary({0.25, 0.75});
}

TEST_CASE("market spaces validate their probabilities") {
  CHECK_THROWS_AS(MarketSpace({0.5, 0.6}), InputError);
  CHECK_THROWS_AS(MarketSpace({1.0, 0.0}), InputError);
  CHECK_THROWS_AS(MarketSpace(std::vector<double>{}), InputError);
  CHECK(MarketSpace::uniform(4).is_uniform());
  CHECK_FALSE(binary.is_uniform());
}

TEST_CASE("expectation is the weighted sum") {
  CHECK(expectation(binary, Position{0.0, 4.0 / 3.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(expectation(binary, Position{0.0, 4.0 / std::sqrt(3.0)}) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(expectation(binary, Position::constant(2, -2.5)) == doctest::Approx(-2.5));
}

TEST_CASE("left quantile follows the left-continuous convention") {
  const Position x{0.0, 4.0 / 3.0};
  CHECK(left_quantile(binary, x, 0.2) == 0.0);
  CHECK(left_quantile(binary, x, 0.25) == 0.0);
  CHECK(left_quantile(binary, x, 0.3) == doctest::Approx(4.0 / 3.0));
  CHECK(left_quantile(binary, Position{7.0, 7.0}, 0.9) == 7.0);
  CHECK_THROWS_AS(left_quantile(binary, x, 0.0), InputError);
  CHECK_THROWS_AS(left_quantile(binary, x, 1.0), InputError);
}

TEST_CASE("left quantile is non-decreasing in t") {
  Rng rng(trial_seed(11, 0));
  const MarketSpace s = random_space(rng, 6);
  const Position x = random_position(rng, 6, 5.0);
  double prev = -1e300;
  for (int k = 1; k < 1000; ++k) {
    const double q = left_quantile(s, x, k / 1000.0);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("equality in distribution") {
  const MarketSpace half = MarketSpace::uniform(2);
  CHECK(equal_in_distribution(half, Position{1, 2}, Position{2, 1}));
  CHECK_FALSE(equal_in_distribution(binary, Position{1, 2}, Position{2, 1}));
  CHECK(equal_in_distribution(binary, Position{1, 2}, Position{1, 2}));
}

TEST_CASE("comonotonicity is the pairwise sign condition") {
  CHECK(is_comonotone(Position{1, 2}, Position{3, 5}));
  CHECK_FALSE(is_comonotone(Position{1, 2}, Position{5, 3}));
  CHECK(is_comonotone(Position{4, 4}, Position{5, 3}));
}

TEST_CASE("dispersive order compares quantile spreads") {
  CHECK(dispersive_leq(binary, Position{0, 1}, Position{0, 2}));
  CHECK(dispersive_leq(binary, Position{3, 3}, Position{0, 2}));
  CHECK_FALSE(dispersive_leq(binary, Position{0, 2}, Position{0, 1}));
}

TEST_CASE("dispersive order survives positive scaling") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(trial_seed(5, t));
    const MarketSpace s = random_space(rng, 5);
    const Position x = random_position(rng, 5, 3.0);
    const Position y = random_position(rng, 5, 3.0);
    const double lambda = uniform(rng, 0.1, 10.0);
    if (dispersive_leq(s, y, x)) CHECK(dispersive_leq(s, lambda * y, lambda * x));
  }
}

TEST_CASE("pairing is bilinear and symmetric") {
  CHECK(pairing(binary, Position{1, 0}, Position{4, 0}) == doctest::Approx(1.0));
  CHECK(pairing(binary, Position{0, 0}, Position{4, 9}) == 0.0);
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng(trial_seed(3, t));
    const MarketSpace s = random_space(rng, 4);
    const Position x = random_position(rng, 4, 2.0);
    const Position y = random_position(rng, 4, 2.0);
    const Position z = random_position(rng, 4, 2.0);
    const double a = uniform(rng, -2.0, 2.0);
    CHECK(std::abs(pairing(s, x, y) - pairing(s, y, x)) < 1e-12);
    CHECK(std::abs(pairing(s, a * x + z, y) - (a * pairing(s, x, y) + pairing(s, z, y))) <
          1e-12);
    CHECK(std::abs(pairing(s, Position::constant(4, 1.0), y) - expectation(s, y)) < 1e-12);
  }
}

TEST_CASE("statistics report extremes and weighted norms") {
  const Statistics st = statistics(binary, Position{2, 0}, 2.0);
  CHECK(st.lp_norm == doctest::Approx(1.0));
  const Statistics e = statistics(binary, Position{-1, 5}, 1.0);
  CHECK(e.ess_inf == -1.0);
  CHECK(e.ess_sup == 5.0);
  CHECK(lp_norm(binary, Position{-3, -3}, 3.0) == doctest::Approx(3.0));
  CHECK(lp_norm(binary, Position{-3, 2}, std::numeric_limits<double>::infinity()) == 3.0);
  CHECK_THROWS_AS(lp_norm(binary, Position{1, 1}, 0.5), InputError);
}

TEST_CASE("sampled comonotone pairs are comonotone and bounded") {
  const MarketSpace s = MarketSpace::uniform(5);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto [x, y] = sample_comonotone_pair(seed, s, 1.0);
    CHECK(is_comonotone(x, y));
    CHECK(is_comonotone(x + 3.0, y - 1.0));
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(std::abs(x[i]) <= 1.0);
      CHECK(std::abs(y[i]) <= 1.0);
    }
  }
}

TEST_CASE("quantiles add up along comonotone pairs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(trial_seed(seed, 1));
    const MarketSpace s = random_space(rng, 6);
    const auto [x, y] = sample_comonotone_pair(seed, s, 4.0);
    const std::vector<double> bps = quantile_breakpoints(s, x, y);
    if (bps.empty()) continue;
    std::vector<double> ts{0.5 * bps.front(), 1.0 - 1e-9};
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) ts.push_back(0.5 * (bps[k] + bps[k + 1]));
    for (double t : bps) ts.push_back(t);
    for (double t : ts) {
      const double lhs = left_quantile(s, x + y, t);
      const double rhs = left_quantile(s, x, t) + left_quantile(s, y, t);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("extended values print inf and reject negatives") {
  CHECK(ExtendedValue::infinity().to_string() == "inf");
  CHECK(ExtendedValue::finite(1.5).to_string() == "1.5");
  CHECK_THROWS(ExtendedValue::finite(-1.0));
  CHECK(ExtendedValue::finite(std::numeric_limits<double>::infinity()).is_infinite());
}
