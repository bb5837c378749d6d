#include "minkdev/deviations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minkdev/errors.hpp"
#include "minkdev/random.hpp"
#include "minkdev/sets.hpp"

namespace minkdev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rounding can leave tiny negatives in differences like E[X] - min X.
ExtendedValue nonneg_value(double v) { return ExtendedValue::finite(std::max(0.0, v)); }

double variance_of(const MarketSpace& space, const Position& x) {
  const double mean = expectation(space, x);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - mean;
    acc += space.prob(i) * d * d;
  }
  return acc;
}

double lower_semivariance(const MarketSpace& space, const Position& x) {
  const double mean = expectation(space, x);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = std::min(0.0, x[i] - mean);
    acc += space.prob(i) * d * d;
  }
  return acc;
}

Axioms measure_axioms(bool homogeneous, bool comonotone, bool lrd) {
  Axioms ax;
  ax.nonneg = Tri::yes;
  ax.translation_insensitive = Tri::yes;
  ax.positive_homogeneous = tri(homogeneous);
  ax.convex = Tri::yes;
  ax.comonotone_additive = tri(comonotone);
  ax.law_invariant = Tri::yes;
  ax.lower_range_dominated = tri(lrd);
  ax.lower_semicontinuous = Tri::yes;
  return ax;
}

double lower_range(const MarketSpace& space, const Position& x) {
  return expectation(space, x) - x.min();
}

// Evaluation of both functionals coincide: both infinite or both finite
// within tol relative to magnitude.
bool close(const ExtendedValue& a, const ExtendedValue& b, double tol) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  const double scale = std::max({1.0, a.value(), b.value()});
  return std::abs(a.value() - b.value()) <= tol * scale;
}

bool close(const ExtendedValue& a, double b, double tol) {
  if (a.is_infinite()) return std::isinf(b);
  if (std::isinf(b)) return false;
  return std::abs(a.value() - b) <= tol * std::max({1.0, a.value(), std::abs(b)});
}

double sum(const ExtendedValue& a, const ExtendedValue& b) { return a.value() + b.value(); }

}  // namespace

MeasureKind parse_measure_kind(std::string_view name) {
  if (name == "variance") return MeasureKind::variance;
  if (name == "sigma" || name == "std_dev") return MeasureKind::std_dev;
  if (name == "sigma_minus" || name == "lower_semidev") return MeasureKind::lower_semidev;
  if (name == "lr") return MeasureKind::lower_range;
  if (name == "ur") return MeasureKind::upper_range;
  if (name == "frd") return MeasureKind::full_range;
  if (name == "esd") return MeasureKind::esd;
  throw InputError("unknown measure '" + std::string(name) + "'");
}

ErrorKind parse_error_kind(std::string_view name) {
  if (name == "lp" || name == "lp_norm") return ErrorKind::lp_norm;
  if (name == "kb" || name == "koenker_bassett") return ErrorKind::koenker_bassett;
  if (name == "sup_range") return ErrorKind::sup_range;
  throw InputError("unknown error measure '" + std::string(name) + "'");
}

double expected_shortfall(const MarketSpace& space, const Position& x, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InputError("expected shortfall needs alpha in (0, 1]");
  const QuantileProfile prof = quantile_profile(space, x);
  double integral = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < prof.values.size() && prev < alpha; ++k) {
    const double upto = std::min(alpha, prof.cumulative[k]);
    if (k + 1 == prof.values.size()) {
      integral += prof.values[k] * (alpha - prev);
    } else if (upto > prev) {
      integral += prof.values[k] * (upto - prev);
    }
    prev = std::max(prev, upto);
  }
  return -integral / alpha;
}

DeviationFunctional builtin_deviation(MeasureKind kind, double param) {
  switch (kind) {
    case MeasureKind::variance: {
      Axioms ax = measure_axioms(false, false, false);
      return DeviationFunctional(
          [](const MarketSpace& s, const Position& x) {
            return nonneg_value(variance_of(s, x));
          },
          ax, "variance");
    }
    case MeasureKind::std_dev:
      return DeviationFunctional(
          [](const MarketSpace& s, const Position& x) {
            return nonneg_value(std::sqrt(variance_of(s, x)));
          },
          measure_axioms(true, false, false), "sigma");
    case MeasureKind::lower_semidev:
      return DeviationFunctional(
          [](const MarketSpace& s, const Position& x) {
            return nonneg_value(std::sqrt(lower_semivariance(s, x)));
          },
          measure_axioms(true, false, true), "sigma_minus");
    case MeasureKind::lower_range:
      return DeviationFunctional(
          [](const MarketSpace& s, const Position& x) {
            return nonneg_value(lower_range(s, x));
          },
          measure_axioms(true, true, true), "lr");
    case MeasureKind::upper_range:
      return DeviationFunctional(
          [](const MarketSpace& s, const Position& x) {
            return nonneg_value(x.max() - expectation(s, x));
          },
          measure_axioms(true, true, false), "ur");
    case MeasureKind::full_range:
      return DeviationFunctional(
          [](const MarketSpace&, const Position& x) {
            return nonneg_value(x.max() - x.min());
          },
          measure_axioms(true, true, false), "frd");
    case MeasureKind::esd: {
      const double alpha = param;
      if (!(alpha >= 0.0 && alpha <= 1.0))
        throw InputError("esd needs alpha in [0, 1]");
      const std::string label = "esd(" + format_double(alpha) + ")";
      if (alpha == 0.0) {
        return DeviationFunctional(
            [](const MarketSpace& s, const Position& x) {
              return nonneg_value(lower_range(s, x));
            },
            measure_axioms(true, true, true), label);
      }
      return DeviationFunctional(
          [alpha](const MarketSpace& s, const Position& x) {
            return nonneg_value(expectation(s, x) + expected_shortfall(s, x, alpha));
          },
          measure_axioms(true, true, true), label);
    }
  }
  throw InputError("unknown measure kind");
}

ErrorFunctional builtin_error(ErrorKind kind, double param) {
  switch (kind) {
    case ErrorKind::lp_norm: {
      const double p = param;
      if (!(p >= 1.0)) throw InputError("lp error needs p in [1, inf]");
      return ErrorFunctional(
          [p](const MarketSpace& s, const Position& x) {
            return ExtendedValue::finite(lp_norm(s, x, p));
          },
          true, "lp(" + format_double(p) + ")");
    }
    case ErrorKind::koenker_bassett: {
      const double alpha = param;
      if (!(alpha > 0.0 && alpha < 1.0))
        throw InputError("Koenker-Bassett error needs alpha in (0, 1)");
      const double down = (1.0 - alpha) / alpha;
      return ErrorFunctional(
          [down](const MarketSpace& s, const Position& x) {
            double acc = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
              acc += s.prob(i) * (x[i] < 0.0 ? -down * x[i] : x[i]);
            return ExtendedValue::finite(acc);
          },
          true, "kb(" + format_double(alpha) + ")");
    }
    case ErrorKind::sup_range:
      return ErrorFunctional(
          [](const MarketSpace& s, const Position& x) {
            return ExtendedValue::finite(2.0 * lp_norm(s, x, kInf));
          },
          true, "sup_range");
  }
  throw InputError("unknown error kind");
}

DeviationFunctional deviation_from_error(const ErrorFunctional& eps,
                                         const ShiftSearchConfig& search) {
  Axioms ax;
  ax.translation_insensitive = Tri::yes;
  ax.convex = eps.convex() ? Tri::yes : Tri::unknown;
  return DeviationFunctional(
      [eps, search](const MarketSpace& s, const Position& x) {
        if (x.is_constant()) return eps(s, Position::zero(x.size()));
        auto f = [&](double c) { return eps(s, x - c).value(); };
        const ShiftMinimum best = minimize_shift(f, x, search, eps.convex());
        return ExtendedValue::finite(best.value);
      },
      ax, "inf_c " + eps.label());
}

DeviationFunctional min_of(const DeviationFunctional& d1, const DeviationFunctional& d2) {
  Axioms ax;
  const Axioms& a = d1.axioms();
  const Axioms& b = d2.axioms();
  auto both = [](Tri x, Tri y) { return tri_and(x, y) == Tri::yes ? Tri::yes : Tri::unknown; };
  ax.nonneg = both(a.nonneg, b.nonneg);
  ax.translation_insensitive = both(a.translation_insensitive, b.translation_insensitive);
  ax.positive_homogeneous = both(a.positive_homogeneous, b.positive_homogeneous);
  ax.law_invariant = both(a.law_invariant, b.law_invariant);
  ax.lower_semicontinuous = both(a.lower_semicontinuous, b.lower_semicontinuous);
  ax.lower_range_dominated =
      (a.lower_range_dominated == Tri::yes || b.lower_range_dominated == Tri::yes)
          ? Tri::yes
          : Tri::unknown;
  return DeviationFunctional(
      [d1, d2](const MarketSpace& s, const Position& x) {
        return std::min(d1(s, x), d2(s, x));
      },
      ax, "min(" + d1.label() + ", " + d2.label() + ")");
}

DeviationFunctional max_of(const DeviationFunctional& d1, const DeviationFunctional& d2) {
  Axioms ax;
  const Axioms& a = d1.axioms();
  const Axioms& b = d2.axioms();
  auto both = [](Tri x, Tri y) { return tri_and(x, y) == Tri::yes ? Tri::yes : Tri::unknown; };
  ax.nonneg = both(a.nonneg, b.nonneg);
  ax.translation_insensitive = both(a.translation_insensitive, b.translation_insensitive);
  ax.positive_homogeneous = both(a.positive_homogeneous, b.positive_homogeneous);
  ax.convex = both(a.convex, b.convex);
  ax.law_invariant = both(a.law_invariant, b.law_invariant);
  ax.lower_semicontinuous = both(a.lower_semicontinuous, b.lower_semicontinuous);
  ax.lower_range_dominated = both(a.lower_range_dominated, b.lower_range_dominated);
  return DeviationFunctional(
      [d1, d2](const MarketSpace& s, const Position& x) {
        return std::max(d1(s, x), d2(s, x));
      },
      ax, "max(" + d1.label() + ", " + d2.label() + ")");
}

DeviationFunctional sum_of(const DeviationFunctional& d1, const DeviationFunctional& d2) {
  Axioms ax;
  const Axioms& a = d1.axioms();
  const Axioms& b = d2.axioms();
  auto both = [](Tri x, Tri y) { return tri_and(x, y) == Tri::yes ? Tri::yes : Tri::unknown; };
  ax.nonneg = both(a.nonneg, b.nonneg);
  ax.translation_insensitive = both(a.translation_insensitive, b.translation_insensitive);
  ax.positive_homogeneous = both(a.positive_homogeneous, b.positive_homogeneous);
  ax.convex = both(a.convex, b.convex);
  ax.comonotone_additive = both(a.comonotone_additive, b.comonotone_additive);
  ax.law_invariant = both(a.law_invariant, b.law_invariant);
  ax.lower_semicontinuous = both(a.lower_semicontinuous, b.lower_semicontinuous);
  return DeviationFunctional(
      [d1, d2](const MarketSpace& s, const Position& x) {
        const ExtendedValue u = d1(s, x);
        const ExtendedValue v = d2(s, x);
        if (u.is_infinite() || v.is_infinite()) return ExtendedValue::infinity();
        return ExtendedValue::finite(u.value() + v.value());
      },
      ax, d1.label() + " + " + d2.label());
}

DeviationFunctional scaled(const DeviationFunctional& d, double lambda) {
  if (!(lambda > 0.0 && std::isfinite(lambda)))
    throw InputError("measure scale must be positive and finite");
  return DeviationFunctional(
      [d, lambda](const MarketSpace& s, const Position& x) {
        const ExtendedValue v = d(s, x);
        return v.is_infinite() ? v : ExtendedValue::finite(lambda * v.value());
      },
      d.axioms(), format_double(lambda) + " * " + d.label());
}

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::nonneg: return "nonneg";
    case Axiom::translation_insensitive: return "translation_insensitive";
    case Axiom::positive_homogeneous: return "positive_homogeneous";
    case Axiom::convex: return "convex";
    case Axiom::comonotone_additive: return "comonotone_additive";
    case Axiom::law_invariant: return "law_invariant";
    case Axiom::lower_range_dominated: return "lower_range_dominated";
  }
  return "?";
}

Axiom parse_axiom(std::string_view name) {
  for (Axiom a : all_axioms())
    if (to_string(a) == name) return a;
  throw InputError("unknown axiom '" + std::string(name) + "'");
}

std::vector<Axiom> all_axioms() {
  return {Axiom::nonneg,
          Axiom::translation_insensitive,
          Axiom::positive_homogeneous,
          Axiom::convex,
          Axiom::comonotone_additive,
          Axiom::law_invariant,
          Axiom::lower_range_dominated};
}

Tri declared(const Axioms& ax, Axiom a) {
  switch (a) {
    case Axiom::nonneg: return ax.nonneg;
    case Axiom::translation_insensitive: return ax.translation_insensitive;
    case Axiom::positive_homogeneous: return ax.positive_homogeneous;
    case Axiom::convex: return ax.convex;
    case Axiom::comonotone_additive: return ax.comonotone_additive;
    case Axiom::law_invariant: return ax.law_invariant;
    case Axiom::lower_range_dominated: return ax.lower_range_dominated;
  }
  return Tri::unknown;
}

PropertyReport check_axiom(const DeviationFunctional& d, const MarketSpace& space,
                           Axiom axiom, const SamplerConfig& sampler) {
  PropertyReport rep;
  rep.property = to_string(axiom);
  const std::size_t n = space.size();
  const double tol = sampler.tol;

  auto fail = [&](int trial, std::vector<Position> xs, std::vector<double> scalars) {
    rep.verdict = Verdict::fail;
    rep.counterexample = Counterexample{std::move(xs), std::move(scalars),
                                        static_cast<std::uint64_t>(trial)};
    rep.trials = trial + 1;
    return rep;
  };

  if (axiom == Axiom::law_invariant) {
    bool shared = false;
    for (std::size_t i = 0; i < n && !shared; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (std::abs(space.prob(i) - space.prob(j)) <= 1e-12) shared = true;
    if (!shared) {
      rep.verdict = Verdict::precondition_failed;
      rep.note = "no two outcomes share a probability; no rearrangement to test";
      return rep;
    }
  }

  for (int t = 0; t < sampler.trials; ++t) {
    Rng rng(trial_seed(sampler.seed, static_cast<std::uint64_t>(t)));
    const Position x = random_position(rng, n, sampler.range);
    switch (axiom) {
      case Axiom::nonneg: {
        const double c = uniform(rng, -sampler.range, sampler.range);
        const Position cx = Position::constant(n, c);
        const ExtendedValue dc = d(space, cx);
        if (dc.is_infinite() || dc.value() > 1e-12) return fail(t, {cx}, {c});
        if (!x.is_constant() && !(d(space, x).value() > 0.0)) return fail(t, {x}, {});
        break;
      }
      case Axiom::translation_insensitive: {
        const double c = uniform(rng, -10.0, 10.0);
        if (!close(d(space, x + c), d(space, x), tol)) return fail(t, {x}, {c});
        break;
      }
      case Axiom::positive_homogeneous: {
        const double lambda = std::exp(uniform(rng, std::log(0.1), std::log(10.0)));
        const ExtendedValue dx = d(space, x);
        const double rhs = dx.is_infinite() ? kInf : lambda * dx.value();
        if (!close(d(space, lambda * x), rhs, tol)) return fail(t, {x}, {lambda});
        break;
      }
      case Axiom::convex: {
        const Position y = random_position(rng, n, sampler.range);
        const ExtendedValue mid = d(space, 0.5 * (x + y));
        const double rhs = 0.5 * sum(d(space, x), d(space, y));
        if (std::isinf(rhs)) break;
        if (mid.is_infinite() || mid.value() > rhs + tol * std::max(1.0, rhs))
          return fail(t, {x, y}, {0.5});
        break;
      }
      case Axiom::comonotone_additive: {
        const auto [u, v] = sample_comonotone_pair(
            trial_seed(sampler.seed, static_cast<std::uint64_t>(t)), space, sampler.range);
        const ExtendedValue duv = d(space, u + v);
        const double rhs = sum(d(space, u), d(space, v));
        if (!close(duv, rhs, tol)) return fail(t, {u, v}, {});
        break;
      }
      case Axiom::law_invariant: {
        const Position y = random_equal_law_rearrangement(space, x, rng);
        if (!close(d(space, y), d(space, x), tol)) return fail(t, {x, y}, {});
        break;
      }
      case Axiom::lower_range_dominated: {
        const ExtendedValue dx = d(space, x);
        const double lr = lower_range(space, x);
        if (dx.is_infinite() || dx.value() > lr + 1e-10 * std::max(1.0, lr))
          return fail(t, {x}, {});
        break;
      }
    }
  }
  rep.trials = sampler.trials;
  rep.note = "no counterexample in " + std::to_string(sampler.trials) + " trials";
  return rep;
}

std::vector<PropertyReport> check_axioms(const DeviationFunctional& d,
                                         const MarketSpace& space,
                                         const SamplerConfig& sampler) {
  std::vector<PropertyReport> out;
  for (Axiom a : all_axioms()) out.push_back(check_axiom(d, space, a, sampler));
  return out;
}

LevelIdentityReport level_identity_check(const DeviationFunctional& d,
                                         const MarketSpace& space, double k,
                                         const SamplerConfig& sampler,
                                         const GaugeOptions& opts) {
  const AcceptanceSet acc1 = sublevel_set(space, d, 1.0);
  const AcceptanceSet acck = sublevel_set(space, d, k);
  LevelIdentityReport rep;
  for (int t = 0; t < sampler.trials; ++t) {
    Rng rng(trial_seed(sampler.seed, static_cast<std::uint64_t>(t)));
    const Position x = random_position(rng, space.size(), sampler.range);
    const ExtendedValue dx = d(space, x);
    const ExtendedValue g1 = minkowski_gauge(acc1, x, opts).value;
    const ExtendedValue gk = minkowski_gauge(acck, x, opts).value;
    ++rep.samples;
    if (dx.is_infinite() || g1.is_infinite() || gk.is_infinite()) {
      if (!(dx.is_infinite() && g1.is_infinite() && gk.is_infinite())) {
        rep.infinite_mismatch = true;
        rep.worst = x;
      }
      continue;
    }
    const double gap = std::max(std::abs(dx.value() - g1.value()),
                                std::abs(dx.value() - k * gk.value()));
    if (gap > rep.max_gap) {
      rep.max_gap = gap;
      if (!rep.infinite_mismatch) rep.worst = x;
    }
  }
  return rep;
}

SetRelationReport measure_algebra(const DeviationFunctional& d1,
                                  const DeviationFunctional& d2, AlgebraOp op,
                                  double k, double lambda, const MarketSpace& space,
                                  const std::vector<Position>& samples) {
  if (!(k > 0.0)) throw InputError("level k must be positive");
  const AcceptanceSet a = sublevel_set(space, d1, k);
  SetRelationReport rep;

  auto record = [&](bool agree, const Position& x) {
    ++rep.samples;
    if (!agree) {
      ++rep.disagreements;
      if (!rep.witness) rep.witness = x;
    }
  };

  switch (op) {
    case AlgebraOp::min: {
      rep.relation = "Acc_k(min(D, D')) = Acc_k(D) union Acc_k(D')";
      const AcceptanceSet lhs = sublevel_set(space, min_of(d1, d2), k);
      const AcceptanceSet rhs = combine(a, sublevel_set(space, d2, k), SetOp::set_union);
      for (const Position& x : samples) record(lhs.contains(x) == rhs.contains(x), x);
      break;
    }
    case AlgebraOp::max: {
      rep.relation = "Acc_k(max(D, D')) = Acc_k(D) intersect Acc_k(D')";
      const AcceptanceSet lhs = sublevel_set(space, max_of(d1, d2), k);
      const AcceptanceSet rhs =
          combine(a, sublevel_set(space, d2, k), SetOp::set_intersection);
      for (const Position& x : samples) record(lhs.contains(x) == rhs.contains(x), x);
      break;
    }
    case AlgebraOp::sum: {
      if (!(lambda > 0.0)) throw InputError("second level must be positive");
      rep.relation = "Acc_{k+l}(D + D') contains Acc_k(D) intersect Acc_l(D')";
      const AcceptanceSet lhs = sublevel_set(space, sum_of(d1, d2), k + lambda);
      const AcceptanceSet rhs =
          combine(a, sublevel_set(space, d2, lambda), SetOp::set_intersection);
      for (const Position& x : samples) record(!rhs.contains(x) || lhs.contains(x), x);
      break;
    }
    case AlgebraOp::scale: {
      rep.relation = "Acc_k(l * D) = (1/l) Acc_k(D)";
      const AcceptanceSet lhs = sublevel_set(space, scaled(d1, lambda), k);
      const AcceptanceSet rhs = scale_set(a, 1.0 / lambda);
      for (const Position& x : samples) record(lhs.contains(x) == rhs.contains(x), x);
      break;
    }
  }
  return rep;
}

}  // namespace minkdev
