#pragma once

#include <optional>
#include <utility>

#include "minkdev/acceptance_set.hpp"
#include "minkdev/errors.hpp"
#include "minkdev/functional.hpp"
#include "minkdev/shift_search.hpp"

namespace minkdev {

struct GaugeOptions {
  double m_min = 1e-12;
  double m_cap = 1e12;
  double tol_rel = 1e-10;
  double tol_abs = 1e-12;
  int ray_grid = 64;  // points per decade for non-star-shaped sets
  int max_oracle_calls = 10'000;

  void validate() const;
};

struct GaugeResult {
  ExtendedValue value;
  // (lo, hi) with lo outside and hi inside the set (gauge), or lo inside and
  // hi outside (cogauge).
  std::optional<std::pair<double, double>> bracket;
  Tri attained = Tri::unknown;
  int oracle_calls = 0;
  std::optional<Position> boundary_point;  // X / value
  bool approximate = false;                // grid scan on a non-star set
};

// Oracle budget exhausted; carries the tightest bracket reached.
class GaugeBudgetError : public NumericalError {
 public:
  GaugeBudgetError(double lo, double hi);
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_, hi_;
};

// inf{m > 0 : X/m in A}, with inf of the empty set = inf.
GaugeResult minkowski_gauge(const AcceptanceSet& a, const Position& x,
                            const GaugeOptions& opts = {});

// sup{m > 0 : X/m in A}, with sup of the empty set = 0.  The search assumes
// {m : X/m in A} is an initial segment (0, w], which holds for complements
// of star-shaped sets.
GaugeResult cogauge(const AcceptanceSet& a, const Position& x,
                    const GaugeOptions& opts = {});

// The gauge as a functional, with axioms inherited from A's flags.
DeviationFunctional deviation_from_set(const AcceptanceSet& a,
                                       const GaugeOptions& opts = {});

// inf_c gauge_A(X - c), the gauge of A + R.
ExtendedValue shift_infimum_gauge(const AcceptanceSet& a, const Position& x,
                                  const GaugeOptions& opts = {},
                                  const ShiftSearchConfig& search = {});

}  // namespace minkdev
