#include <doctest.h>

#include <cmath>

#include "minkdev/errors.hpp"
#include "minkdev/lp.hpp"
#include "minkdev/random.hpp"

using namespace minkdev;

TEST_CASE("simplex solves a textbook maximization") {
  // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18  -> 36 at (2, 6)
  LinearProgram lp;
  lp.objective = {3, 5};
  lp.add_row({1, 0}, Sense::le, 4);
  lp.add_row({0, 2}, Sense::le, 12);
  lp.add_row({3, 2}, Sense::le, 18);
  const LPOutcome r = solve_lp(lp);
  REQUIRE(r.optimal());
  CHECK(r.value == doctest::Approx(36.0));
  CHECK(r.point[0] == doctest::Approx(2.0));
  CHECK(r.point[1] == doctest::Approx(6.0));
}

TEST_CASE("simplex reports infeasibility and certified rays") {
  LinearProgram bad;
  bad.objective = {1};
  bad.add_row({1}, Sense::ge, 2);
  bad.add_row({1}, Sense::le, 1);
  CHECK(solve_lp(bad).infeasible());

  LinearProgram open;
  open.objective = {1, 1};
  open.add_row({1, -1}, Sense::le, 1);
  const LPOutcome r = solve_lp(open);
  REQUIRE(r.unbounded());
  // The ray keeps the constraint and improves the objective.
  CHECK(r.ray[0] - r.ray[1] <= 1e-12);
  CHECK(r.ray[0] + r.ray[1] > 0.0);
}

TEST_CASE("free variables and equality rows") {
  // max -|x - 3| written as: max -t  s.t. t >= x - 3, t >= 3 - x, x free, with x = y - 1, y = 5
  LinearProgram lp;
  lp.objective = {0, -1, 0};
  lp.free_vars = {true, false, true};
  lp.add_row({1, -1, 0}, Sense::le, 3);
  lp.add_row({-1, -1, 0}, Sense::le, -3);
  lp.add_row({1, 0, -1}, Sense::eq, -1);
  lp.add_row({0, 0, 1}, Sense::eq, 5);
  const LPOutcome r = solve_lp(lp);
  REQUIRE(r.optimal());
  CHECK(r.point[0] == doctest::Approx(4.0));
  CHECK(r.value == doctest::Approx(-1.0));
}

TEST_CASE("degenerate vertices terminate under Bland's rule") {
  // Beale's cycling example.
  LinearProgram lp;
  lp.objective = {0.75, -150, 0.02, -6};
  lp.add_row({0.25, -60, -0.04, 9}, Sense::le, 0);
  lp.add_row({0.5, -90, -0.02, 3}, Sense::le, 0);
  lp.add_row({0, 0, 1, 0}, Sense::le, 1);
  const LPOutcome r = solve_lp(lp);
  REQUIRE(r.optimal());
  CHECK(r.value == doctest::Approx(0.05));
}

TEST_CASE("optimal points satisfy every constraint") {
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng(trial_seed(21, t));
    LinearProgram lp;
    const int n = 3, m = 5;
    for (int j = 0; j < n; ++j) lp.objective.push_back(uniform(rng, -1, 1));
    lp.free_vars.assign(n, true);
    for (int i = 0; i < m; ++i) {
      std::vector<double> row;
      for (int j = 0; j < n; ++j) row.push_back(uniform(rng, -1, 1));
      lp.add_row(row, Sense::le, uniform(rng, 0.1, 2.0));
    }
    const LPOutcome r = solve_lp(lp);
    REQUIRE_FALSE(r.infeasible());
    if (!r.optimal()) continue;
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += lp.rows[i][j] * r.point[j];
      CHECK(s <= lp.rhs[i] + 1e-9);
    }
    // Weak duality spot check: random feasible points do no better.
    for (int k = 0; k < 20; ++k) {
      std::vector<double> y;
      for (int j = 0; j < n; ++j) y.push_back(uniform(rng, -3, 3));
      bool feasible = true;
      for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += lp.rows[i][j] * y[j];
        feasible = feasible && s <= lp.rhs[i];
      }
      if (!feasible) continue;
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += lp.objective[j] * y[j];
      CHECK(obj <= r.value + 1e-9);
    }
  }
}
