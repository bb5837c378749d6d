#pragma once

#include "minkdev/acceptance_set.hpp"
#include "minkdev/functional.hpp"
#include "minkdev/polytope.hpp"
#include "minkdev/random.hpp"

namespace minkdev {

// Random positive homogeneous, convex deviation measure.  Law-invariant
// draws are positive combinations of the closed-form measures; the others
// are polyhedral seminorms max_i |<w_i, X - E X>| with random weights.
DeviationFunctional random_deviation(Rng& rng, const MarketSpace& space, bool law_invariant);

// Star-shaped, stable under adding constants and radially bounded at
// non-constants.  Convex draws are one sub-level set; the others are the
// union of two.
AcceptanceSet random_admissible_set(Rng& rng, const MarketSpace& space, bool convex,
                                    bool law_invariant);

// Vertex polytope containing the origin: either in its interior or as a
// vertex (so that some directions have infinite gauge).
Polytope random_polytope_with_origin(Rng& rng, const MarketSpace& space, bool origin_vertex);

}  // namespace minkdev
