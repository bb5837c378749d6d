#include "minkdev/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "minkdev/deviations.hpp"
#include "minkdev/duality.hpp"
#include "minkdev/errors.hpp"
#include "minkdev/gauge.hpp"
#include "minkdev/generators.hpp"
#include "minkdev/random.hpp"
#include "minkdev/sets.hpp"

namespace minkdev {

namespace {

struct Ctx {
  std::string group;
  std::uint64_t seed;
  double tol_scale;
  std::vector<SuiteCheck>* out;

  std::uint64_t stream(std::uint64_t salt) const { return trial_seed(seed, salt); }

  // Records max gap over a sample loop; `fn(trial)` returns the gap.
  void gap(const std::string& name, double tol, int trials,
           const std::function<double(std::uint64_t)>& fn) const {
    SuiteCheck c{group, name, true, 0.0, tol * tol_scale, {}, {}};
    for (int t = 0; t < trials; ++t) {
      const double g = fn(static_cast<std::uint64_t>(t));
      if (!(g <= c.metric)) {
        c.metric = std::isnan(g) ? std::numeric_limits<double>::infinity() : g;
        if (c.metric > c.tolerance && !c.trial) c.trial = static_cast<std::uint64_t>(t);
      }
    }
    c.passed = c.metric <= c.tolerance;
    c.detail = std::to_string(trials) + " samples";
    out->push_back(c);
  }

  void verdict(const std::string& name, const PropertyReport& r, bool expect_pass) const {
    SuiteCheck c{group, name, r.passed() == expect_pass, r.passed() ? 0.0 : 1.0, 0.0, {}, {}};
    c.detail = r.property + ": " + to_string(r.verdict);
    if (!r.note.empty()) c.detail += " (" + r.note + ")";
    if (!c.passed && r.counterexample) c.trial = r.counterexample->trial;
    out->push_back(c);
  }

  void flag(const std::string& name, bool ok, const std::string& detail, double metric = 0.0) const {
    out->push_back(SuiteCheck{group, name, ok, metric, 0.0, detail, {}});
  }
};

double ext_gap(const ExtendedValue& a, const ExtendedValue& b) {
  if (a.is_infinite() || b.is_infinite())
    return a.is_infinite() == b.is_infinite() ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(a.value() - b.value());
}

double rel(double gap, const ExtendedValue& scale) {
  return scale.is_finite() ? gap / std::max(1.0, std::abs(scale.value())) : gap;
}

ExtendedValue g(const AcceptanceSet& a, const Position& x) { return minkowski_gauge(a, x).value; }

MarketSpace space_for(std::uint64_t seed) {
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(std::uniform_int_distribution<int>(2, 6)(rng));
  return random_space(rng, n);
}

SamplerConfig sampler(std::uint64_t seed, int trials) {
  SamplerConfig s;
  s.seed = seed;
  s.trials = trials;
  return s;
}

const MarketSpace& binary() {
  static const MarketSpace s({0.25, 0.75});
  return s;
}

void group_gauge(const Ctx& c) {
  c.gap("positive homogeneity of gauges", 1e-7, 200, [&](std::uint64_t t) {
    Rng rng(c.stream(t));
    const MarketSpace space = space_for(rng());
    const AcceptanceSet a = random_admissible_set(rng, space, t % 2 == 0, true);
    const Position x = random_position(rng, space.size(), 5.0);
    const double lambda = std::exp(uniform(rng, std::log(0.1), std::log(10.0)));
    const ExtendedValue gx = g(a, x);
    if (gx.is_infinite()) return ext_gap(g(a, lambda * x), gx);
    return rel(std::abs(g(a, lambda * x).value() - lambda * gx.value()),
               ExtendedValue::finite(lambda * gx.value()));
  });
  c.gap("cogauge of the complement equals the gauge", 1e-7, 100, [&](std::uint64_t t) {
    Rng rng(c.stream(1000 + t));
    const MarketSpace space = space_for(rng());
    const AcceptanceSet a = random_admissible_set(rng, space, true, true);
    const Position x = random_position(rng, space.size(), 5.0);
    const ExtendedValue gx = g(a, x);
    return rel(ext_gap(cogauge(complement(a), x).value, gx), gx);
  });
  c.gap("gauge of Acc_1(sigma) against the closed form", 1e-8, 200, [&](std::uint64_t t) {
    Rng rng(c.stream(2000 + t));
    const MarketSpace space = space_for(rng());
    const AcceptanceSet a = sublevel_set(space, builtin_deviation(MeasureKind::std_dev), 1.0);
    const Position x = random_position(rng, space.size(), 5.0);
    const double sigma = lp_norm(space, x - expectation(space, x), 2.0);
    return rel(ext_gap(g(a, x), ExtendedValue::finite(sigma)), ExtendedValue::finite(sigma));
  });
}

void group_hull(const Ctx& c) {
  c.gap("gauge of the star hull equals the gauge (0 in A)", 1e-7, 60, [&](std::uint64_t t) {
    Rng rng(c.stream(t));
    const MarketSpace space = MarketSpace::uniform(2);
    const Position far{uniform(rng, 2.5, 5.0), uniform(rng, -5.0, -2.5)};
    const AcceptanceSet a = combine(norm_ball(space, 2.0, 1.0), norm_ball(space, 2.0, 1.0, far),
                                    SetOp::set_union)
                                .with_flags(SetFlags{});
    const Position x = random_position(rng, 2, 6.0);
    const ExtendedValue gx = g(a, x);
    return rel(ext_gap(g(star_hull(a, 256), x), gx), gx);
  });
  c.gap("law-invariant hull gauge is the orbit minimum", 1e-7, 60, [&](std::uint64_t t) {
    Rng rng(c.stream(500 + t));
    const MarketSpace space = MarketSpace::uniform(4);
    const AcceptanceSet a = random_admissible_set(rng, space, true, false);
    const AcceptanceSet hull = law_invariant_hull(a);
    const Position x = random_position(rng, 4, 5.0);
    std::vector<double> v(x.values().begin(), x.values().end());
    std::sort(v.begin(), v.end());
    ExtendedValue best = ExtendedValue::infinity();
    do {
      best = std::min(best, g(a, Position(v)));
    } while (std::next_permutation(v.begin(), v.end()));
    return rel(ext_gap(g(hull, x), best), best);
  });
}

void group_algebra(const Ctx& c) {
  auto pair_gap = [&](std::uint64_t salt, auto&& fn) {
    return [&c, salt, fn](std::uint64_t t) {
      Rng rng(c.stream(salt + t));
      const MarketSpace space = space_for(rng());
      const AcceptanceSet a = random_admissible_set(rng, space, rng() % 2 == 0, true);
      const AcceptanceSet b = random_admissible_set(rng, space, rng() % 2 == 0, false);
      const Position x = random_position(rng, space.size(), 5.0);
      return fn(rng, a, b, x);
    };
  };
  c.gap("gauge of a union is the min", 1e-7, 100,
        pair_gap(0, [](Rng&, const AcceptanceSet& a, const AcceptanceSet& b, const Position& x) {
          const ExtendedValue want = std::min(g(a, x), g(b, x));
          return rel(ext_gap(g(combine(a, b, SetOp::set_union), x), want), want);
        }));
  c.gap("gauge of an intersection is the max", 1e-7, 100,
        pair_gap(1000, [](Rng&, const AcceptanceSet& a, const AcceptanceSet& b, const Position& x) {
          const ExtendedValue want = std::max(g(a, x), g(b, x));
          return rel(ext_gap(g(combine(a, b, SetOp::set_intersection), x), want), want);
        }));
  c.gap("gauge of lambda A is gauge of A over lambda", 1e-7, 100,
        pair_gap(2000, [](Rng& rng, const AcceptanceSet& a, const AcceptanceSet&, const Position& x) {
          const double lambda = uniform(rng, 0.2, 5.0);
          const ExtendedValue ga = g(a, x);
          const ExtendedValue want =
              ga.is_infinite() ? ga : ExtendedValue::finite(ga.value() / lambda);
          return rel(ext_gap(g(scale_set(a, lambda), x), want), want);
        }));
}

void group_shift(const Ctx& c) {
  c.gap("gauge of A + R equals the shift infimum (L2 ball)", 1e-5, 30, [&](std::uint64_t t) {
    Rng rng(c.stream(t));
    const MarketSpace space = space_for(rng());
    const AcceptanceSet a = norm_ball(space, 2.0, 1.0);
    const Position x = random_position(rng, space.size(), 5.0);
    const ExtendedValue want = shift_infimum_gauge(a, x);
    return rel(ext_gap(g(add_constants(a), x), want), want);
  });
  c.gap("min_c ||X - c||_2 equals sigma", 1e-7, 100, [&](std::uint64_t t) {
    Rng rng(c.stream(1000 + t));
    const MarketSpace space = space_for(rng());
    const Position x = random_position(rng, space.size(), 5.0);
    const DeviationFunctional d = deviation_from_error(builtin_error(ErrorKind::lp_norm, 2.0));
    return ext_gap(d(space, x), builtin_deviation(MeasureKind::std_dev)(space, x));
  });
  c.gap("Koenker-Bassett error yields ESD", 1e-7, 100, [&](std::uint64_t t) {
    Rng rng(c.stream(2000 + t));
    const MarketSpace space = space_for(rng());
    const Position x = random_position(rng, space.size(), 5.0);
    const double alpha = uniform(rng, 0.05, 0.95);
    const DeviationFunctional d =
        deviation_from_error(builtin_error(ErrorKind::koenker_bassett, alpha));
    return ext_gap(d(space, x), builtin_deviation(MeasureKind::esd, alpha)(space, x));
  });
  c.gap("sup-range error yields the full range", 1e-7, 100, [&](std::uint64_t t) {
    Rng rng(c.stream(3000 + t));
    const MarketSpace space = space_for(rng());
    const Position x = random_position(rng, space.size(), 5.0);
    const DeviationFunctional d = deviation_from_error(builtin_error(ErrorKind::sup_range));
    return ext_gap(d(space, x), builtin_deviation(MeasureKind::full_range)(space, x));
  });
}

void group_comonotone(const Ctx& c) {
  const MarketSpace space = MarketSpace::uniform(5);
  for (auto [kind, alpha, name] : {std::tuple{MeasureKind::esd, 0.1, "ESD(0.1)"},
                                   std::tuple{MeasureKind::lower_range, 0.0, "LR"},
                                   std::tuple{MeasureKind::full_range, 0.0, "FRD"}}) {
    SamplerConfig s = sampler(c.stream(1), 200);
    s.tol = 1e-9 * c.tol_scale;
    c.verdict(std::string("comonotone additivity of ") + name,
              check_axiom(builtin_deviation(kind, alpha), space, Axiom::comonotone_additive, s),
              true);
  }
  c.verdict("sigma is not comonotone additive",
            check_axiom(builtin_deviation(MeasureKind::std_dev), space,
                        Axiom::comonotone_additive, sampler(c.stream(2), 200)),
            false);
  const AcceptanceSet esd = sublevel_set(space, builtin_deviation(MeasureKind::esd, 0.25), 1.0);
  c.verdict("Acc_1(ESD) is comonotone convex",
            check_property(esd, SetProperty::comonotone_convex, sampler(c.stream(3), 200)), true);
  c.verdict("complement of Acc_1(ESD) is comonotone convex",
            check_property(esd, SetProperty::complement_comonotone_convex,
                           sampler(c.stream(4), 200)),
            true);
  c.verdict("gauge of Acc_1(ESD) is comonotone additive",
            check_axiom(deviation_from_set(esd), space, Axiom::comonotone_additive,
                        sampler(c.stream(5), 100)),
            true);
}

void group_law(const Ctx& c) {
  const MarketSpace space = MarketSpace::uniform(4);
  for (int i = 0; i < 4; ++i) {
    Rng rng(c.stream(static_cast<std::uint64_t>(i)));
    const AcceptanceSet a = random_admissible_set(rng, space, i % 2 == 0, true);
    c.verdict("law invariance of a generated set #" + std::to_string(i),
              check_property(a, SetProperty::law_invariant, sampler(c.stream(10 + i), 100)), true);
    c.verdict("law invariance of its gauge #" + std::to_string(i),
              check_axiom(deviation_from_set(a), space, Axiom::law_invariant,
                          sampler(c.stream(20 + i), 100)),
              true);
  }
  Rng rng(c.stream(30));
  const AcceptanceSet skew = random_admissible_set(rng, space, true, false);
  c.verdict("the law-invariant hull is law invariant",
            check_property(law_invariant_hull(skew), SetProperty::law_invariant,
                           sampler(c.stream(31), 100)),
            true);
}

void group_monotone(const Ctx& c) {
  const MarketSpace space = MarketSpace::uniform(4);
  for (auto [kind, alpha, name] : {std::tuple{MeasureKind::std_dev, 0.0, "sigma"},
                                   std::tuple{MeasureKind::esd, 0.25, "ESD(0.25)"},
                                   std::tuple{MeasureKind::full_range, 0.0, "FRD"}}) {
    const AcceptanceSet a = sublevel_set(space, builtin_deviation(kind, alpha), 1.0);
    c.verdict(std::string("Acc_1(") + name + ") is anti-monotone in the dispersive order",
              check_property(a, SetProperty::anti_monotone_dispersive, sampler(c.stream(1), 200)),
              true);
  }
}

void group_duality(const Ctx& c) {
  for (int i = 0; i < 6; ++i) {
    Rng rng(c.stream(static_cast<std::uint64_t>(i)));
    const MarketSpace space = random_space(rng, static_cast<std::size_t>(2 + i % 3));
    const Polytope p = random_polytope_with_origin(rng, space, i % 2 == 1);
    const GapReport r = dual_representation_check(p, sampler(c.stream(100 + i), 100));
    SuiteCheck s{c.group, "gauge equals the polar support function #" + std::to_string(i),
                 r.within(1e-6 * c.tol_scale), r.max_gap, 1e-6 * c.tol_scale,
                 std::to_string(r.samples) + " samples, " + std::to_string(r.infinite_agreements) +
                     " infinite agreements, " + std::to_string(r.infinite_mismatches) +
                     " mismatches",
                 {}};
    c.out->push_back(s);
    const BipolarReport b = bipolar_check(p, sampler(c.stream(200 + i), 200));
    c.flag("bipolar equals conv(P u {0}) #" + std::to_string(i), b.disagreements == 0,
           std::to_string(b.samples) + " samples, " + std::to_string(b.disagreements) +
               " disagreements",
           b.disagreements);
  }
  // Strip |x0 - x1| <= 2 on a uniform binary space: gauge |x0 - x1| / 2.
  const MarketSpace u2 = MarketSpace::uniform(2);
  const Polytope strip =
      Polytope::from_halfspaces(u2, {Position{2.0, -2.0}, Position{-2.0, 2.0}}, {2.0, 2.0});
  const QuantileRepReport q = discrete_quantile_rep_check(strip, sampler(c.stream(300), 100));
  c.flag("quantile representation on a symmetric strip", q.precondition_ok && q.max_gap < 1e-6,
         std::to_string(q.samples) + " samples", q.max_gap);
  c.gap("risk envelope on the strip", 1e-7, 100, [&](std::uint64_t t) {
    Rng rng(c.stream(400 + t));
    const Position x = random_position(rng, 2, 5.0);
    const EnvelopeResult e = risk_envelope(strip, x);
    return ext_gap(e.value, ExtendedValue::finite(std::abs(x[0] - x[1]) / 2.0));
  });
}

void group_level(const Ctx& c) {
  for (auto [kind, alpha, name] : {std::tuple{MeasureKind::std_dev, 0.0, "sigma"},
                                   std::tuple{MeasureKind::lower_range, 0.0, "LR"},
                                   std::tuple{MeasureKind::upper_range, 0.0, "UR"},
                                   std::tuple{MeasureKind::full_range, 0.0, "FRD"},
                                   std::tuple{MeasureKind::esd, 0.1, "ESD(0.1)"},
                                   std::tuple{MeasureKind::esd, 0.25, "ESD(0.25)"}}) {
    for (double k : {0.5, 1.0, 3.0}) {
      const LevelIdentityReport r = level_identity_check(builtin_deviation(kind, alpha), binary(),
                                                         k, sampler(c.stream(1), 100));
      c.flag(std::string("level identity for ") + name + " at k=" + format_double(k),
             !r.infinite_mismatch && r.max_gap < 1e-6 * c.tol_scale,
             std::to_string(r.samples) + " samples", r.max_gap);
    }
  }
  for (double k : {1.0, 4.0}) {
    c.gap("variance level set gives sigma / sqrt(k) at k=" + format_double(k), 1e-6, 100,
          [&](std::uint64_t t) {
            Rng rng(c.stream(100 + t));
            const MarketSpace space = space_for(rng());
            const Position x = random_position(rng, space.size(), 5.0);
            const AcceptanceSet a =
                sublevel_set(space, builtin_deviation(MeasureKind::variance), k);
            const double want = lp_norm(space, x - expectation(space, x), 2.0) / std::sqrt(k);
            return ext_gap(g(a, x), ExtendedValue::finite(want));
          });
  }
}

void group_measure_algebra(const Ctx& c) {
  const DeviationFunctional d1 = builtin_deviation(MeasureKind::std_dev);
  const DeviationFunctional d2 = builtin_deviation(MeasureKind::lower_range);
  Rng rng(c.stream(0));
  const MarketSpace space = random_space(rng, 3);
  std::vector<Position> samples;
  for (int i = 0; i < 300; ++i) samples.push_back(random_position(rng, 3, 5.0));
  for (auto [op, lambda, name] : {std::tuple{AlgebraOp::min, 0.0, "min"},
                                  std::tuple{AlgebraOp::max, 0.0, "max"},
                                  std::tuple{AlgebraOp::sum, 0.7, "sum"},
                                  std::tuple{AlgebraOp::scale, 2.5, "scale"}}) {
    const SetRelationReport r = measure_algebra(d1, d2, op, 1.3, lambda, space, samples);
    c.flag(std::string("sub-level sets under ") + name + ": " + r.relation, r.holds(),
           std::to_string(r.samples) + " samples, " + std::to_string(r.disagreements) +
               " disagreements",
           r.disagreements);
  }
}

using GroupFn = void (*)(const Ctx&);

const std::vector<std::pair<std::string, GroupFn>>& registry() {
  static const std::vector<std::pair<std::string, GroupFn>> r{
      {"gauge", group_gauge},         {"hull", group_hull},
      {"algebra", group_algebra},     {"shift", group_shift},
      {"comonotone", group_comonotone}, {"law", group_law},
      {"monotone", group_monotone},   {"duality", group_duality},
      {"level", group_level},         {"measure_algebra", group_measure_algebra}};
  return r;
}

}  // namespace

std::vector<std::string> suite_groups() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

std::vector<SuiteCheck> run_suite(const SuiteOptions& opts) {
  const std::vector<std::string> groups = suite_groups();
  for (const std::string& o : opts.only)
    if (std::find(groups.begin(), groups.end(), o) == groups.end())
      throw InputError("unknown suite group \"" + o + "\"");
  std::vector<SuiteCheck> out;
  std::uint64_t index = 0;
  for (const auto& [name, fn] : registry()) {
    ++index;
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), name) == opts.only.end())
      continue;
    fn(Ctx{name, trial_seed(opts.seed, index), opts.tol_scale, &out});
  }
  return out;
}

}  // namespace minkdev
