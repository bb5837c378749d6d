#include "minkdev/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minkdev/errors.hpp"
#include "minkdev/random.hpp"
#include "minkdev/sets.hpp"

namespace minkdev {

namespace {

double weighted_dot(const MarketSpace& space, const Position& a, const Position& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += space.prob(i) * a[i] * b[i];
  return s;
}

Position transposed(const Position& x, std::size_t i, std::size_t j) {
  Position y = x;
  std::swap(y[i], y[j]);
  return y;
}

// Symmetry of P under every transposition of outcomes, judged on generators.
bool permutation_symmetric(const Polytope& p) {
  const Generators g = p.generators();
  const std::size_t n = p.space().size();
  const MarketSpace& space = p.space();
  auto recedes = [&](const Position& d) {
    if (p.is_vertex_form()) return d.is_zero();
    for (const Position& row : p.rows()) {
      double mag = 0.0;
      for (std::size_t k = 0; k < n; ++k) mag += std::abs(space.prob(k) * row[k] * d[k]);
      if (weighted_dot(space, row, d) > 1e-9 * std::max(1.0, mag)) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      for (const Position& v : g.vertices)
        if (!p.contains(transposed(v, i, j))) return false;
      for (const Position& r : g.rays)
        if (!recedes(transposed(r, i, j))) return false;
      for (const Position& l : g.lines)
        if (!recedes(transposed(l, i, j)) || !recedes(-transposed(l, i, j))) return false;
    }
  return true;
}

}  // namespace

bool PolarForm::contains(const Position& y, double tol) const {
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const double s = weighted_dot(space, normals[i], y);
    const double slack = tol * std::max(1.0, std::abs(s));
    if (equality[i] ? std::abs(s - rhs[i]) > slack : s > rhs[i] + slack) return false;
  }
  return true;
}

PolarForm polar(const Polytope& p) {
  PolarForm out{p.space(), {}, {}, {}};
  auto add = [&](const Position& g, double b, bool eq) {
    if (g.is_zero()) return;
    out.normals.push_back(g);
    out.rhs.push_back(b);
    out.equality.push_back(eq);
  };
  if (p.is_vertex_form()) {
    for (const Position& v : p.vertices()) add(v, 1.0, false);
    return out;
  }
  const Generators g = p.generators();
  for (const Position& v : g.vertices) add(v, 1.0, false);
  for (const Position& r : g.rays) add(r, 0.0, false);
  for (const Position& l : g.lines) add(l, 0.0, true);
  return out;
}

SupportValue support_point(const PolarForm& polar, const Position& x,
                           const SimplexOptions& opts) {
  const MarketSpace& space = polar.space;
  const std::size_t n = space.size();
  if (x.size() != n) throw InputError("position dimension does not match the polar");
  SupportValue out;
  if (x.is_zero()) {
    out.value = ExtendedValue::finite(0.0);
    out.argmax = Position::zero(n);
    return out;
  }
  LinearProgram lp;
  lp.objective.resize(n);
  for (std::size_t i = 0; i < n; ++i) lp.objective[i] = space.prob(i) * x[i];
  lp.free_vars.assign(n, true);
  for (std::size_t k = 0; k < polar.normals.size(); ++k) {
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = space.prob(i) * polar.normals[k][i];
    lp.add_row(std::move(row), polar.equality[k] ? Sense::eq : Sense::le, polar.rhs[k]);
  }
  const LPOutcome res = solve_lp(lp, opts);
  out.iterations = res.iterations;
  if (res.unbounded()) {
    out.value = ExtendedValue::infinity();
    return out;
  }
  if (!res.optimal())
    throw NumericalError("polar LP reported infeasible although 0 is feasible");
  // The polar contains 0, so the optimum is non-negative up to rounding.
  out.value = ExtendedValue::finite(std::max(0.0, res.value));
  out.argmax = Position(std::vector<double>(res.point.begin(), res.point.begin() +
                                                                   static_cast<std::ptrdiff_t>(n)));
  return out;
}

ExtendedValue support_function(const PolarForm& polar, const Position& x) {
  return support_point(polar, x).value;
}

GapReport dual_representation_check(const Polytope& p, const SamplerConfig& sampler,
                                    const GaugeOptions& opts) {
  if (!p.contains_origin())
    throw InputError("dual representation needs a polytope containing the origin");
  const AcceptanceSet a = polytope_set(p);
  const PolarForm pf = polar(p);
  GapReport rep;
  for (int t = 0; t < sampler.trials; ++t) {
    Rng rng(trial_seed(sampler.seed, static_cast<std::uint64_t>(t)));
    const Position x = random_position(rng, p.space().size(), sampler.range);
    const ExtendedValue g = minkowski_gauge(a, x, opts).value;
    const ExtendedValue h = support_function(pf, x);
    ++rep.samples;
    if (g.is_infinite() || h.is_infinite()) {
      if (g.is_infinite() && h.is_infinite()) {
        ++rep.infinite_agreements;
      } else {
        ++rep.infinite_mismatches;
        if (!rep.worst) rep.worst = x;
      }
      continue;
    }
    const double gap = std::abs(g.value() - h.value());
    if (gap > rep.max_gap) {
      rep.max_gap = gap;
      if (rep.infinite_mismatches == 0) rep.worst = x;
    }
  }
  return rep;
}

BipolarReport bipolar_check(const Polytope& p, const SamplerConfig& sampler) {
  if (!p.is_vertex_form()) throw InputError("bipolar check needs a vertex-form polytope");
  const PolarForm pf = polar(p);
  std::vector<Position> hull = p.vertices();
  hull.push_back(Position::zero(p.space().size()));
  BipolarReport rep;
  for (int t = 0; t < sampler.trials; ++t) {
    Rng rng(trial_seed(sampler.seed, static_cast<std::uint64_t>(t)));
    Position x = random_position(rng, p.space().size(), sampler.range);
    // Rescale onto a band around the boundary so both verdicts occur.
    const ExtendedValue h0 = support_function(pf, x);
    if (h0.is_finite() && h0.value() > 0.0) x = (uniform(rng, 0.2, 2.0) / h0.value()) * x;
    const ExtendedValue h = support_function(pf, x);
    const bool in_bipolar = h.is_finite() && h.value() <= 1.0 + 1e-8;
    const bool in_hull = in_convex_hull(hull, x);
    ++rep.samples;
    const bool borderline = h.is_finite() && std::abs(h.value() - 1.0) <= 1e-8;
    if (in_bipolar != in_hull && !borderline) {
      ++rep.disagreements;
      if (!rep.witness) rep.witness = x;
    }
  }
  return rep;
}

EnvelopeResult risk_envelope(const Polytope& p, const Position& x) {
  const MarketSpace& space = p.space();
  if (!p.contains_origin())
    throw InputError("risk envelope needs a polytope containing the origin");
  if (p.is_vertex_form())
    throw InputError("risk envelope needs a set stable under adding constants; "
                     "bounded vertex polytopes are not");
  for (const Position& row : p.rows()) {
    double s = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      s += space.prob(i) * row[i];
      mag += space.prob(i) * std::abs(row[i]);
    }
    if (std::abs(s) > 1e-12 * std::max(1.0, mag))
      throw InputError("risk envelope needs every constraint to ignore constants");
  }
  const SupportValue sv = support_point(polar(p), x);
  EnvelopeResult out;
  out.value = sv.value;
  if (sv.argmax) out.q = Position::constant(space.size(), 1.0) - *sv.argmax;
  return out;
}

QuantileRepReport discrete_quantile_rep_check(const Polytope& p,
                                              const SamplerConfig& sampler,
                                              const GaugeOptions& opts) {
  const MarketSpace& space = p.space();
  if (!space.is_uniform())
    throw InputError("quantile representation check needs uniform probabilities");
  if (space.size() > 8) throw InputError("quantile representation check supports n <= 8");
  QuantileRepReport rep;
  if (!permutation_symmetric(p)) {
    rep.precondition_ok = false;
    rep.note = "polytope is not invariant under permutations of outcomes";
    return rep;
  }
  const std::size_t n = space.size();
  const AcceptanceSet a = polytope_set(p);
  const PolarForm pf = polar(p);

  auto sorted = [](const Position& v) {
    std::vector<double> s(v.values().begin(), v.values().end());
    std::sort(s.begin(), s.end());
    return s;
  };

  for (int t = 0; t < sampler.trials; ++t) {
    Rng rng(trial_seed(sampler.seed, static_cast<std::uint64_t>(t)));
    const Position x = random_position(rng, n, sampler.range);
    const ExtendedValue g = minkowski_gauge(a, x, opts).value;
    // Probe polar extreme points in the direction of X and a few random ones.
    std::vector<Position> dirs{x};
    for (int k = 0; k < 4; ++k) dirs.push_back(random_position(rng, n, 1.0));
    double rhs = 0.0;
    bool unbounded = false;
    const std::vector<double> sx = sorted(x);
    for (const Position& d : dirs) {
      const SupportValue sv = support_point(pf, d);
      if (sv.value.is_infinite()) {
        if (&d == &dirs.front()) unbounded = true;
        continue;
      }
      const std::vector<double> sy = sorted(*sv.argmax);
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += sx[i] * sy[i] / static_cast<double>(n);
      rhs = std::max(rhs, acc);
    }
    ++rep.samples;
    if (g.is_infinite() || unbounded) {
      if (g.is_infinite() != unbounded) {
        rep.max_gap = std::numeric_limits<double>::infinity();
        rep.worst = x;
      }
      continue;
    }
    const double gap = std::abs(g.value() - rhs);
    if (gap > rep.max_gap) {
      rep.max_gap = gap;
      rep.worst = x;
    }
  }
  return rep;
}

}  // namespace minkdev
