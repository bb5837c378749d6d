#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "minkdev/acceptance_set.hpp"
#include "minkdev/functional.hpp"
#include "minkdev/gauge.hpp"
#include "minkdev/polytope.hpp"
#include "minkdev/property.hpp"
#include "minkdev/shift_search.hpp"

namespace minkdev {

// {X : D(X) <= k}; positions where D is infinite are excluded.
AcceptanceSet sublevel_set(const MarketSpace& space, const DeviationFunctional& d,
                           double k);

// {X : eps(X) <= k} for a measure of error.  Convex errors vanishing at 0
// give star-shaped sets.
AcceptanceSet error_sublevel_set(const MarketSpace& space, const ErrorFunctional& eps,
                                 double k);

// {X : ||X - center||_p <= radius} under the probability-weighted norm.
AcceptanceSet norm_ball(const MarketSpace& space, double p, double radius,
                        std::optional<Position> center = std::nullopt);

AcceptanceSet polytope_set(const Polytope& poly, std::string label = "polytope");

// The constant positions R.
AcceptanceSet constants_set(const MarketSpace& space);
AcceptanceSet whole_space(const MarketSpace& space);
AcceptanceSet empty_set(const MarketSpace& space);
// {X : X >= 0}.
AcceptanceSet nonneg_orthant(const MarketSpace& space);

// Oracle negation.  Flags are reset to unknown.
AcceptanceSet complement(const AcceptanceSet& a);

// lambda * A.
AcceptanceSet scale_set(const AcceptanceSet& a, double lambda);

enum class SetOp { set_union, set_intersection };
AcceptanceSet combine(const AcceptanceSet& a, const AcceptanceSet& b, SetOp op);

// A + R.  Star-shaped A is searched through the gauge of A along shifts;
// other sets by a direct membership scan over shifts.
AcceptanceSet add_constants(const AcceptanceSet& a, const ShiftSearchConfig& search = {},
                            const GaugeOptions& opts = {});

// [0, 1] A, probed on a geometric grid of `resolution` points per decade.
// A is assumed non-empty, so the origin is always a member.
AcceptanceSet star_hull(const AcceptanceSet& a, int resolution = 64);

// Positions with some rearrangement in A.  Uniform spaces with n <= 8 only.
AcceptanceSet law_invariant_hull(const AcceptanceSet& a);

enum class SetProperty {
  star_shaped,
  convex,
  stable_scalar_add,
  radially_bounded_nonconst,
  absorbing,
  strongly_star_shaped,
  law_invariant,
  anti_monotone_dispersive,
  comonotone_convex,
  complement_comonotone_convex,
};

std::string to_string(SetProperty p);
SetProperty parse_set_property(std::string_view name);
std::vector<SetProperty> all_set_properties();

// Falsification run; exact when the set carries a polytope form and the
// property is decidable from it.
PropertyReport check_property(const AcceptanceSet& a, SetProperty property,
                              const SamplerConfig& sampler);

}  // namespace minkdev
