#pragma once

#include <functional>
#include <limits>

#include "minkdev/market.hpp"

namespace minkdev {

// One-dimensional search over cash shifts c in min_c f(X - c).
struct ShiftSearchConfig {
  double c_max = 1e6;
  int grid = 129;         // bracketing grid for non-convex objectives
  int convex_grid = 17;   // coarse bracketing grid when f is declared convex
  int membership_grid = 256;  // direct membership scan for non-star sets
  double width_tol = 1e-9;    // final bracket width, relative to max(1, |c|)
};

struct ShiftMinimum {
  double value = std::numeric_limits<double>::infinity();
  double argmin = 0.0;
  bool approximate = false;  // grid-first search on a non-convex landscape
};

// Minimizes c -> f(c) where f(c) stands for a functional evaluated at X - c.
// The search window is centered on X's range and widened geometrically up
// to [-c_max, c_max]; a minimizer pinned to the widest window raises
// NumericalError.  Returns early once a value <= stop_below is seen.
ShiftMinimum minimize_shift(const std::function<double(double)>& f,
                            const Position& x, const ShiftSearchConfig& cfg,
                            bool convex,
                            double stop_below = -std::numeric_limits<double>::infinity());

}  // namespace minkdev
