#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "minkdev/functional.hpp"
#include "minkdev/gauge.hpp"
#include "minkdev/property.hpp"
#include "minkdev/shift_search.hpp"

namespace minkdev {

enum class MeasureKind {
  variance,
  std_dev,
  lower_semidev,
  lower_range,
  upper_range,
  full_range,
  esd,  // expected shortfall deviation, parameter alpha in [0, 1]
};

enum class ErrorKind {
  lp_norm,          // parameter p in [1, inf]
  koenker_bassett,  // parameter alpha in (0, 1)
  sup_range,        // 2 ||X||_inf
};

MeasureKind parse_measure_kind(std::string_view name);
ErrorKind parse_error_kind(std::string_view name);

// Closed-form deviation measures with their axioms.  `param` is alpha for
// esd and ignored otherwise.  alpha = 0 gives the lower range deviation.
DeviationFunctional builtin_deviation(MeasureKind kind, double param = 0.0);

ErrorFunctional builtin_error(ErrorKind kind, double param = 0.0);

// ES_alpha(X) = -(1/alpha) * int_0^alpha F^{-1}(t) dt, integrated exactly
// over the quantile steps.  Can be negative, so it is not a DeviationFunctional.
double expected_shortfall(const MarketSpace& space, const Position& x, double alpha);

// D(X) = inf_c eps(X - c).  Translation insensitive by construction;
// non-negativity is left for the checker.
DeviationFunctional deviation_from_error(const ErrorFunctional& eps,
                                         const ShiftSearchConfig& search = {});

// max(D, D'), min(D, D'), D + D', lambda * D.
DeviationFunctional min_of(const DeviationFunctional& d1, const DeviationFunctional& d2);
DeviationFunctional max_of(const DeviationFunctional& d1, const DeviationFunctional& d2);
DeviationFunctional sum_of(const DeviationFunctional& d1, const DeviationFunctional& d2);
DeviationFunctional scaled(const DeviationFunctional& d, double lambda);

enum class Axiom {
  nonneg,
  translation_insensitive,
  positive_homogeneous,
  convex,
  comonotone_additive,
  law_invariant,
  lower_range_dominated,
};

std::string to_string(Axiom a);
Axiom parse_axiom(std::string_view name);
std::vector<Axiom> all_axioms();
Tri declared(const Axioms& ax, Axiom a);

PropertyReport check_axiom(const DeviationFunctional& d, const MarketSpace& space,
                           Axiom axiom, const SamplerConfig& sampler);
std::vector<PropertyReport> check_axioms(const DeviationFunctional& d,
                                         const MarketSpace& space,
                                         const SamplerConfig& sampler);

struct LevelIdentityReport {
  double max_gap = 0.0;  // max |D(X) - gauge_{Acc_1}(X)| and |D(X) - k gauge_{Acc_k}(X)|
  int samples = 0;
  bool infinite_mismatch = false;
  std::optional<Position> worst;
};

// D(X) = gauge of Acc_1(D) at X = k * gauge of Acc_k(D) at X, on samples.
LevelIdentityReport level_identity_check(const DeviationFunctional& d,
                                         const MarketSpace& space, double k,
                                         const SamplerConfig& sampler,
                                         const GaugeOptions& opts = {});

enum class AlgebraOp { min, max, sum, scale };

struct SetRelationReport {
  std::string relation;
  int samples = 0;
  int disagreements = 0;
  std::optional<Position> witness;

  bool holds() const { return disagreements == 0; }
};

// Membership check of the sub-level set identities under min / max / scale
// and the inclusion for sums.  `lambda` is the scale factor (scale) or the
// second level (sum).
SetRelationReport measure_algebra(const DeviationFunctional& d1,
                                  const DeviationFunctional& d2, AlgebraOp op,
                                  double k, double lambda, const MarketSpace& space,
                                  const std::vector<Position>& samples);

}  // namespace minkdev
