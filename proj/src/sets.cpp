#include "minkdev/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minkdev/errors.hpp"
#include "minkdev/random.hpp"

namespace minkdev {

namespace {

Tri yes_or_unknown(bool b) { return b ? Tri::yes : Tri::unknown; }
bool is_yes(Tri t) { return t == Tri::yes; }

bool constant_position(const Position& x) {
  double scale = 0.0;
  for (double v : x.values()) scale = std::max(scale, std::abs(v));
  return x.is_constant(1e-12 * scale);
}

std::optional<Polytope> scaled_polytope(const std::optional<Polytope>& p, double lambda) {
  if (!p) return std::nullopt;
  if (p->is_vertex_form()) {
    std::vector<Position> v;
    for (const Position& x : p->vertices()) v.push_back(lambda * x);
    return Polytope::from_vertices(p->space(), std::move(v));
  }
  std::vector<double> rhs = p->rhs();
  for (double& b : rhs) b *= lambda;
  return Polytope::from_halfspaces(p->space(), p->rows(), std::move(rhs));
}

bool shares_probability(const MarketSpace& space) {
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = i + 1; j < space.size(); ++j)
      if (std::abs(space.prob(i) - space.prob(j)) <= 1e-12) return true;
  return false;
}

}  // namespace

AcceptanceSet sublevel_set(const MarketSpace& space, const DeviationFunctional& d,
                           double k) {
  if (!(k > 0.0 && std::isfinite(k))) throw InputError("sub-level k must be positive");
  const Axioms& ax = d.axioms();
  const bool ph = is_yes(ax.positive_homogeneous);
  const bool cvx = is_yes(ax.convex);
  const bool nonneg = is_yes(ax.nonneg);
  SetFlags f;
  // D(0) = 0 and D(lambda X) <= lambda D(X) for lambda in [0, 1] follow from
  // homogeneity, or from convexity once D vanishes at 0.
  f.star_shaped = yes_or_unknown(ph || (cvx && nonneg));
  f.radially_bounded_nonconst = yes_or_unknown(nonneg && (ph || cvx));
  f.convex = yes_or_unknown(cvx);
  f.closed = yes_or_unknown(is_yes(ax.lower_semicontinuous));
  f.stable_scalar_add = yes_or_unknown(is_yes(ax.translation_insensitive));
  f.law_invariant = yes_or_unknown(is_yes(ax.law_invariant));
  f.contains_zero = yes_or_unknown(nonneg || ph);
  return AcceptanceSet(
      space,
      [space, d, k](const Position& x) {
        const ExtendedValue v = d(space, x);
        return v.is_finite() && v.value() <= k;
      },
      f, "Acc_" + format_double(k) + "(" + d.label() + ")");
}

AcceptanceSet error_sublevel_set(const MarketSpace& space, const ErrorFunctional& eps,
                                 double k) {
  if (!(k > 0.0 && std::isfinite(k))) throw InputError("sub-level k must be positive");
  SetFlags f;
  f.convex = yes_or_unknown(eps.convex());
  f.star_shaped = f.convex;
  f.contains_zero = Tri::yes;
  f.closed = Tri::yes;
  return AcceptanceSet(
      space,
      [space, eps, k](const Position& x) {
        const ExtendedValue v = eps(space, x);
        return v.is_finite() && v.value() <= k;
      },
      f, "Acc_" + format_double(k) + "(" + eps.label() + ")");
}

AcceptanceSet norm_ball(const MarketSpace& space, double p, double radius,
                        std::optional<Position> center) {
  if (!(p >= 1.0)) throw InputError("norm ball needs p in [1, inf]");
  if (!(radius > 0.0 && std::isfinite(radius)))
    throw InputError("norm ball radius must be positive");
  if (center && center->size() != space.size())
    throw InputError("ball center dimension does not match the space");
  const bool centered = !center || center->is_zero();
  SetFlags f;
  f.convex = Tri::yes;
  f.closed = Tri::yes;
  f.stable_scalar_add = Tri::no;
  f.radially_bounded_nonconst = Tri::yes;
  f.star_shaped = centered ? Tri::yes : Tri::unknown;
  f.law_invariant = centered ? Tri::yes : Tri::unknown;
  f.contains_zero = tri(centered || lp_norm(space, *center, p) <= radius);
  const Position c = center.value_or(Position::zero(space.size()));
  return AcceptanceSet(
      space,
      [space, p, radius, c](const Position& x) { return lp_norm(space, x - c, p) <= radius; },
      f, "ball(p=" + format_double(p) + ", r=" + format_double(radius) + ")");
}

AcceptanceSet polytope_set(const Polytope& poly, std::string label) {
  SetFlags f;
  const bool origin = poly.contains_origin();
  f.convex = Tri::yes;
  f.closed = Tri::yes;
  f.contains_zero = tri(origin);
  f.star_shaped = origin ? Tri::yes : Tri::no;
  if (poly.is_vertex_form()) {
    f.radially_bounded_nonconst = Tri::yes;
    f.stable_scalar_add = Tri::no;
  }
  return AcceptanceSet(
      poly.space(), [poly](const Position& x) { return poly.contains(x); }, f,
      std::move(label), poly);
}

AcceptanceSet constants_set(const MarketSpace& space) {
  SetFlags f{Tri::yes, Tri::yes, Tri::yes, Tri::yes, Tri::yes, Tri::yes, Tri::yes};
  return AcceptanceSet(space, [](const Position& x) { return constant_position(x); }, f,
                       "constants");
}

AcceptanceSet whole_space(const MarketSpace& space) {
  SetFlags f{Tri::yes, Tri::yes, Tri::yes, Tri::yes, Tri::no, Tri::yes, Tri::yes};
  return AcceptanceSet(space, [](const Position&) { return true; }, f, "whole");
}

AcceptanceSet empty_set(const MarketSpace& space) {
  SetFlags f{Tri::yes, Tri::yes, Tri::yes, Tri::yes, Tri::yes, Tri::yes, Tri::no};
  return AcceptanceSet(space, [](const Position&) { return false; }, f, "empty");
}

AcceptanceSet nonneg_orthant(const MarketSpace& space) {
  SetFlags f{Tri::yes, Tri::yes, Tri::yes, Tri::no, Tri::no, Tri::yes, Tri::yes};
  return AcceptanceSet(space, [](const Position& x) { return x.min() >= 0.0; }, f,
                       "orthant");
}

AcceptanceSet complement(const AcceptanceSet& a) {
  SetFlags f;
  f.law_invariant = a.flags().law_invariant == Tri::yes ? Tri::yes : Tri::unknown;
  f.stable_scalar_add = a.flags().stable_scalar_add == Tri::yes ? Tri::yes : Tri::unknown;
  if (a.flags().contains_zero != Tri::unknown)
    f.contains_zero = tri(a.flags().contains_zero == Tri::no);
  AcceptanceSet out(a.space(), [a](const Position& x) { return !a.contains(x); }, f,
                    "complement(" + a.label() + ")");
  return out.with_complement_marker(!a.is_complement());
}

AcceptanceSet scale_set(const AcceptanceSet& a, double lambda) {
  if (!(lambda > 0.0 && std::isfinite(lambda)))
    throw InputError("set scale must be positive and finite");
  AcceptanceSet out(a.space(), [a, lambda](const Position& x) { return a.contains(x / lambda); },
                    a.flags(), format_double(lambda) + " * " + a.label(),
                    scaled_polytope(a.exact_form(), lambda));
  return out.with_complement_marker(a.is_complement());
}

AcceptanceSet combine(const AcceptanceSet& a, const AcceptanceSet& b, SetOp op) {
  if (!(a.space() == b.space())) throw InputError("combined sets live on different spaces");
  const SetFlags& fa = a.flags();
  const SetFlags& fb = b.flags();
  auto both = [](Tri x, Tri y) { return tri_and(x, y) == Tri::yes ? Tri::yes : Tri::unknown; };
  auto either = [](Tri x, Tri y) {
    return (x == Tri::yes || y == Tri::yes) ? Tri::yes : Tri::unknown;
  };
  SetFlags f;
  f.star_shaped = both(fa.star_shaped, fb.star_shaped);
  f.closed = both(fa.closed, fb.closed);
  f.stable_scalar_add = both(fa.stable_scalar_add, fb.stable_scalar_add);
  f.law_invariant = both(fa.law_invariant, fb.law_invariant);
  if (op == SetOp::set_union) {
    // Unions of convex sets need not be convex.
    f.radially_bounded_nonconst = both(fa.radially_bounded_nonconst, fb.radially_bounded_nonconst);
    f.contains_zero = either(fa.contains_zero, fb.contains_zero);
    return AcceptanceSet(
        a.space(), [a, b](const Position& x) { return a.contains(x) || b.contains(x); }, f,
        "(" + a.label() + " | " + b.label() + ")");
  }
  f.convex = both(fa.convex, fb.convex);
  f.radially_bounded_nonconst = either(fa.radially_bounded_nonconst, fb.radially_bounded_nonconst);
  f.contains_zero = both(fa.contains_zero, fb.contains_zero);
  return AcceptanceSet(
      a.space(), [a, b](const Position& x) { return a.contains(x) && b.contains(x); }, f,
      "(" + a.label() + " & " + b.label() + ")");
}

AcceptanceSet add_constants(const AcceptanceSet& a, const ShiftSearchConfig& search,
                            const GaugeOptions& opts) {
  const SetFlags& fa = a.flags();
  SetFlags f;
  f.stable_scalar_add = Tri::yes;
  f.star_shaped = yes_or_unknown(is_yes(fa.star_shaped));
  f.convex = yes_or_unknown(is_yes(fa.convex));
  f.law_invariant = yes_or_unknown(is_yes(fa.law_invariant));
  f.contains_zero = yes_or_unknown(is_yes(fa.contains_zero));

  Membership member;
  if (is_yes(fa.star_shaped)) {
    // X - c in A for some c  iff  inf_c gauge_A(X - c) <= 1 (up to the
    // attainment of the infimum, which the closed flag governs).
    member = [a, search, opts](const Position& x) {
      if (a.contains(x)) return true;
      const bool cvx = is_yes(a.flags().convex);
      auto f = [&](double c) {
        if (a.contains(x - c)) return 0.0;
        return minkowski_gauge(a, x - c, opts).value.value();
      };
      const ShiftMinimum best = minimize_shift(f, x, search, cvx, 1.0 + 1e-9);
      return best.value <= 1.0 + 1e-9;
    };
  } else {
    member = [a, search](const Position& x) {
      if (a.contains(x)) return true;
      const int npts = std::max(3, search.membership_grid);
      double reach = std::max(1.0, x.max() - x.min());
      while (true) {
        const double lo = std::max(-search.c_max, x.min() - reach);
        const double hi = std::min(search.c_max, x.max() + reach);
        for (int k = 0; k < npts; ++k) {
          const double c = lo + (hi - lo) * k / (npts - 1);
          if (a.contains(x - c)) return true;
        }
        if (lo <= -search.c_max && hi >= search.c_max) return false;
        reach *= 4.0;
      }
    };
  }
  return AcceptanceSet(a.space(), std::move(member), f, a.label() + " + R");
}

AcceptanceSet star_hull(const AcceptanceSet& a, int resolution) {
  if (resolution < 2) throw InputError("star hull resolution must be at least 2");
  if (is_yes(a.flags().star_shaped)) return a.with_label("st(" + a.label() + ")");
  SetFlags f;
  f.star_shaped = Tri::yes;
  f.law_invariant = yes_or_unknown(is_yes(a.flags().law_invariant));
  f.stable_scalar_add = yes_or_unknown(is_yes(a.flags().stable_scalar_add));
  f.contains_zero = Tri::yes;
  // lambda runs over 10^(-j/resolution), j = 0 .. 12 * resolution.
  const int steps = 12 * resolution;
  return AcceptanceSet(
      a.space(),
      [a, resolution, steps](const Position& z) {
        // [0, 1] A holds the origin whenever A is non-empty, which the
        // hull assumes.
        if (z.is_zero()) return true;
        for (int j = 0; j <= steps; ++j) {
          const double lambda = std::pow(10.0, -static_cast<double>(j) / resolution);
          if (a.contains(z / lambda)) return true;
        }
        return false;
      },
      f, "st(" + a.label() + ")");
}

AcceptanceSet law_invariant_hull(const AcceptanceSet& a) {
  const MarketSpace& space = a.space();
  if (!space.is_uniform())
    throw InputError(
        "law-invariant hull needs uniform probabilities: only then are equal-law "
        "rearrangements exactly the permutations");
  if (space.size() > 8) throw InputError("law-invariant hull enumerates n! orders; n <= 8");
  SetFlags f = a.flags();
  f.law_invariant = Tri::yes;
  f.convex = Tri::unknown;
  return AcceptanceSet(
      space,
      [a](const Position& x) {
        std::vector<double> v(x.values().begin(), x.values().end());
        std::sort(v.begin(), v.end());
        do {
          if (a.contains(Position(v))) return true;
        } while (std::next_permutation(v.begin(), v.end()));
        return false;
      },
      f, "law(" + a.label() + ")");
}

std::string to_string(SetProperty p) {
  switch (p) {
    case SetProperty::star_shaped: return "star_shaped";
    case SetProperty::convex: return "convex";
    case SetProperty::stable_scalar_add: return "stable_scalar_add";
    case SetProperty::radially_bounded_nonconst: return "radially_bounded_nonconst";
    case SetProperty::absorbing: return "absorbing";
    case SetProperty::strongly_star_shaped: return "strongly_star_shaped";
    case SetProperty::law_invariant: return "law_invariant";
    case SetProperty::anti_monotone_dispersive: return "anti_monotone_dispersive";
    case SetProperty::comonotone_convex: return "comonotone_convex";
    case SetProperty::complement_comonotone_convex: return "complement_comonotone_convex";
  }
  return "?";
}

SetProperty parse_set_property(std::string_view name) {
  for (SetProperty p : all_set_properties())
    if (to_string(p) == name) return p;
  throw InputError("unknown set property '" + std::string(name) + "'");
}

std::vector<SetProperty> all_set_properties() {
  return {SetProperty::star_shaped,
          SetProperty::convex,
          SetProperty::stable_scalar_add,
          SetProperty::radially_bounded_nonconst,
          SetProperty::absorbing,
          SetProperty::strongly_star_shaped,
          SetProperty::law_invariant,
          SetProperty::anti_monotone_dispersive,
          SetProperty::comonotone_convex,
          SetProperty::complement_comonotone_convex};
}

namespace {

// Shrinks X by powers of two until it lands in A, then bisects the scale
// towards the exit so that witnesses sit near the boundary.  Shifted copies
// of X (demeaned, pushed above or below zero) are tried as well, so that
// thin sets around the constants and cones still yield members.
std::optional<Position> shrink_into(const AcceptanceSet& a, const Position& x,
                                    const MarketSpace& space) {
  const Position centered = x - expectation(space, x);
  const Position above = x - x.min();
  const Position below = x - x.max();
  for (const Position* dir : {&x, &centered, &above, &below}) {
    double s = 1.0;
    for (int j = 0; j <= 40; ++j, s *= 0.5) {
      if (!a.contains(s * *dir)) continue;
      double in = s, out = 2.0 * s;
      if (j == 0 || a.contains(out * *dir)) return s * *dir;
      for (int k = 0; k < 30; ++k) {
        const double mid = 0.5 * (in + out);
        if (a.contains(mid * *dir)) in = mid;
        else out = mid;
      }
      return in * *dir;
    }
  }
  return std::nullopt;
}

// Grows X by powers of two until it leaves A, then bisects back towards the
// boundary while staying outside.
std::optional<Position> grow_out_of(const AcceptanceSet& a, const Position& x, double m_cap) {
  for (double s = 1.0; s <= m_cap; s *= 2.0) {
    if (a.contains(s * x)) continue;
    double out = s, in = 0.5 * s;
    if (s == 1.0 || !a.contains(in * x)) return s * x;
    for (int k = 0; k < 30; ++k) {
      const double mid = 0.5 * (in + out);
      if (a.contains(mid * x)) in = mid;
      else out = mid;
    }
    return out * x;
  }
  return std::nullopt;
}

}  // namespace

PropertyReport check_property(const AcceptanceSet& a, SetProperty property,
                              const SamplerConfig& sampler) {
  PropertyReport rep;
  rep.property = to_string(property);
  const MarketSpace& space = a.space();
  const std::size_t n = space.size();

  const auto& exact = a.exact_form();
  if (exact && property == SetProperty::convex) {
    rep.exact = true;
    rep.note = "polytope form is convex";
    return rep;
  }
  if (exact && property == SetProperty::star_shaped && exact->contains_origin()) {
    rep.exact = true;
    rep.note = "convex polytope containing the origin";
    return rep;
  }
  if (property == SetProperty::law_invariant && !shares_probability(space)) {
    rep.verdict = Verdict::precondition_failed;
    rep.note = "no two outcomes share a probability; no rearrangement to test";
    return rep;
  }

  int effective = 0;
  auto fail = [&](int trial, std::vector<Position> xs, std::vector<double> scalars) {
    rep.verdict = Verdict::fail;
    rep.counterexample = Counterexample{std::move(xs), std::move(scalars),
                                        static_cast<std::uint64_t>(trial)};
    rep.trials = trial + 1;
    return rep;
  };

  for (int t = 0; t < sampler.trials; ++t) {
    const std::uint64_t ts = trial_seed(sampler.seed, static_cast<std::uint64_t>(t));
    Rng rng(ts);
    const Position raw = random_position(rng, n, sampler.range);
    switch (property) {
      case SetProperty::star_shaped: {
        const auto x = shrink_into(a, raw, space);
        if (!x) break;
        ++effective;
        for (double lambda : {0.0, 1e-3, 0.5, 0.999, uniform(rng, 0.0, 1.0)})
          if (!a.contains(lambda * *x)) return fail(t, {*x}, {lambda});
        break;
      }
      case SetProperty::convex: {
        const auto x = shrink_into(a, raw, space);
        const auto y = shrink_into(a, random_position(rng, n, sampler.range), space);
        if (!x || !y) break;
        ++effective;
        for (double theta : {0.5, uniform(rng, 0.0, 1.0)})
          if (!a.contains(theta * *x + (1.0 - theta) * *y)) return fail(t, {*x, *y}, {theta});
        break;
      }
      case SetProperty::stable_scalar_add: {
        ++effective;
        const double c = uniform(rng, -10.0, 10.0);
        const double big = uniform(rng, -1e3, 1e3);
        const bool in = a.contains(raw);
        for (double shift : {c, big})
          if (a.contains(raw + shift) != in) return fail(t, {raw}, {shift});
        if (const auto x = shrink_into(a, raw, space)) {
          for (double shift : {c, big})
            if (!a.contains(*x + shift)) return fail(t, {*x}, {shift});
        }
        break;
      }
      case SetProperty::radially_bounded_nonconst: {
        const auto x = shrink_into(a, raw, space);
        if (!x || constant_position(*x)) break;
        ++effective;
        if (!grow_out_of(a, *x, sampler.m_cap)) return fail(t, {*x}, {sampler.m_cap});
        break;
      }
      case SetProperty::absorbing: {
        ++effective;
        bool entered = false;
        for (double s = 1.0; s >= 1.0 / sampler.m_cap; s *= 0.5)
          if (a.contains(s * raw)) {
            entered = true;
            break;
          }
        if (!entered) return fail(t, {raw}, {1.0 / sampler.m_cap});
        break;
      }
      case SetProperty::strongly_star_shaped: {
        // Membership along m * X for m from 1/m_cap to m_cap may switch at
        // most once.
        ++effective;
        const double decades = std::log10(sampler.m_cap);
        const int per_decade = 8;
        const int steps = static_cast<int>(std::ceil(2.0 * decades * per_decade));
        int changes = 0;
        bool prev = false;
        for (int k = 0; k <= steps; ++k) {
          const double m = std::pow(10.0, -decades + static_cast<double>(k) / per_decade);
          const bool in = a.contains(m * raw);
          if (k > 0 && in != prev) ++changes;
          prev = in;
        }
        if (changes > 1) return fail(t, {raw}, {static_cast<double>(changes)});
        break;
      }
      case SetProperty::law_invariant: {
        ++effective;
        const Position y = random_equal_law_rearrangement(space, raw, rng);
        if (a.contains(raw) != a.contains(y)) return fail(t, {raw, y}, {});
        if (const auto x = shrink_into(a, raw, space)) {
          const Position z = random_equal_law_rearrangement(space, *x, rng);
          if (!a.contains(z)) return fail(t, {*x, z}, {});
        }
        break;
      }
      case SetProperty::anti_monotone_dispersive: {
        const auto x = shrink_into(a, raw, space);
        if (!x) break;
        ++effective;
        const Position y = random_dispersive_contraction(*x, rng);
        if (!a.contains(y)) return fail(t, {*x, y}, {});
        break;
      }
      case SetProperty::comonotone_convex: {
        const auto [u, v] = sample_comonotone_pair(ts, space, sampler.range);
        const auto x = shrink_into(a, u, space);
        const auto y = shrink_into(a, v, space);
        if (!x || !y || !is_comonotone(*x, *y)) break;
        ++effective;
        for (double theta : {0.5, uniform(rng, 0.0, 1.0)})
          if (!a.contains(theta * *x + (1.0 - theta) * *y)) return fail(t, {*x, *y}, {theta});
        break;
      }
      case SetProperty::complement_comonotone_convex: {
        const auto [u, v] = sample_comonotone_pair(ts, space, sampler.range);
        const auto x = grow_out_of(a, u, sampler.m_cap);
        const auto y = grow_out_of(a, v, sampler.m_cap);
        if (!x || !y) break;
        ++effective;
        for (double theta : {0.5, uniform(rng, 0.0, 1.0)})
          if (a.contains(theta * *x + (1.0 - theta) * *y)) return fail(t, {*x, *y}, {theta});
        break;
      }
    }
  }
  rep.trials = sampler.trials;
  rep.note = "no counterexample in " + std::to_string(sampler.trials) + " trials (" +
             std::to_string(effective) + " with usable witnesses)";
  return rep;
}

}  // namespace minkdev
