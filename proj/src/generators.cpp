#include "minkdev/generators.hpp"

#include <algorithm>
#include <cmath>

#include "minkdev/deviations.hpp"
#include "minkdev/sets.hpp"

namespace minkdev {

namespace {

DeviationFunctional seminorm(Rng& rng, const MarketSpace& space) {
  const std::size_t n = space.size();
  std::vector<Position> w;
  for (std::size_t i = 0; i <= n; ++i) w.push_back(random_position(rng, n, 1.0));
  Axioms ax;
  ax.nonneg = Tri::yes;
  ax.translation_insensitive = Tri::yes;
  ax.positive_homogeneous = Tri::yes;
  ax.convex = Tri::yes;
  ax.lower_semicontinuous = Tri::yes;
  return DeviationFunctional(
      [w](const MarketSpace& s, const Position& x) {
        const Position c = x - expectation(s, x);
        double m = 0.0;
        for (const Position& wi : w) m = std::max(m, std::abs(pairing(s, wi, c)));
        return ExtendedValue::finite(m);
      },
      ax, "seminorm");
}

}  // namespace

DeviationFunctional random_deviation(Rng& rng, const MarketSpace& space, bool law_invariant) {
  if (!law_invariant) return seminorm(rng, space);
  static const MeasureKind kinds[] = {MeasureKind::std_dev, MeasureKind::lower_semidev,
                                      MeasureKind::lower_range, MeasureKind::upper_range,
                                      MeasureKind::full_range, MeasureKind::esd};
  auto draw = [&] {
    const auto k = kinds[std::uniform_int_distribution<int>(0, 5)(rng)];
    const double alpha = uniform(rng, 0.05, 0.95);
    return scaled(builtin_deviation(k, alpha), uniform(rng, 0.5, 2.0));
  };
  DeviationFunctional d = draw();
  const int extra = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < extra; ++i)
    d = std::uniform_int_distribution<int>(0, 1)(rng) ? sum_of(d, draw()) : max_of(d, draw());
  return d;
}

AcceptanceSet random_admissible_set(Rng& rng, const MarketSpace& space, bool convex,
                                    bool law_invariant) {
  const AcceptanceSet a =
      sublevel_set(space, random_deviation(rng, space, law_invariant), uniform(rng, 0.5, 2.0));
  if (convex) return a;
  const AcceptanceSet b =
      sublevel_set(space, random_deviation(rng, space, law_invariant), uniform(rng, 0.5, 2.0));
  return combine(a, b, SetOp::set_union);
}

Polytope random_polytope_with_origin(Rng& rng, const MarketSpace& space, bool origin_vertex) {
  const std::size_t n = space.size();
  const int count = static_cast<int>(n) + 2 + std::uniform_int_distribution<int>(0, 4)(rng);
  std::vector<Position> v;
  if (origin_vertex) {
    // Points in {<a, x> >= 0.2}, plus the origin itself.
    Position a = random_position(rng, n, 1.0);
    double norm = 0.0;
    for (double c : a.values()) norm += c * c;
    a = (1.0 / std::sqrt(norm)) * a;
    v.push_back(Position::zero(n));
    while (static_cast<int>(v.size()) < count + 1) {
      Position x = random_position(rng, n, 2.0);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += a[i] * x[i];
      if (s < 0.2) x = x + (0.2 - s + uniform(rng, 0.0, 1.0)) * a;
      v.push_back(x);
    }
  } else {
    // A cross-polytope around 0 keeps the origin interior.
    for (std::size_t i = 0; i < n; ++i) {
      Position e = Position::zero(n);
      e[i] = uniform(rng, 0.3, 1.5);
      v.push_back(e);
      e[i] = -uniform(rng, 0.3, 1.5);
      v.push_back(e);
    }
    for (int k = 0; k < count; ++k) v.push_back(random_position(rng, n, 2.0));
  }
  return Polytope::from_vertices(space, std::move(v));
}

}  // namespace minkdev
