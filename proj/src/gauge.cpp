#include "minkdev/gauge.hpp"

#include <cmath>
#include <limits>

namespace minkdev {

namespace {

// Counts oracle calls against the budget.
class RayOracle {
 public:
  RayOracle(const AcceptanceSet& a, const Position& x, const GaugeOptions& opts)
      : a_(a), x_(x), opts_(opts) {}

  // X/m in A?
  bool inside(double m) {
    if (calls_ >= opts_.max_oracle_calls) throw GaugeBudgetError(lo_, hi_);
    ++calls_;
    return a_.contains(x_ / m);
  }

  void note_bracket(double lo, double hi) {
    lo_ = lo;
    hi_ = hi;
  }
  int calls() const { return calls_; }

 private:
  const AcceptanceSet& a_;
  const Position& x_;
  const GaugeOptions& opts_;
  int calls_ = 0;
  double lo_ = 0.0;
  double hi_ = std::numeric_limits<double>::infinity();
};

bool converged(double lo, double hi, const GaugeOptions& opts) {
  return hi - lo <= std::max(opts.tol_abs, opts.tol_rel * hi);
}

// Shrinks (out, in) until converged; `in_side_high` tells which end holds
// the members.  Returns the final (lo, hi).
std::pair<double, double> bisect(RayOracle& oracle, double lo, double hi,
                                 bool members_high, const GaugeOptions& opts) {
  while (!converged(lo, hi, opts)) {
    oracle.note_bracket(lo, hi);
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const bool in = oracle.inside(mid);
    if (in == members_high) hi = mid;
    else lo = mid;
  }
  return {lo, hi};
}

GaugeResult finish(const AcceptanceSet& a, const Position& x, double lo,
                   double hi, const RayOracle& oracle) {
  GaugeResult r;
  r.value = ExtendedValue::finite(hi);
  r.bracket = std::make_pair(lo, hi);
  r.oracle_calls = oracle.calls();
  r.attained = a.flags().closed == Tri::yes ? Tri::yes : Tri::unknown;
  r.boundary_point = x / hi;
  return r;
}

GaugeResult gauge_star(const AcceptanceSet& a, const Position& x,
                       const GaugeOptions& opts) {
  RayOracle oracle(a, x, opts);
  double lo = 0.0, hi = 0.0;
  if (oracle.inside(1.0)) {
    hi = 1.0;
    double m = 0.5;
    while (true) {
      if (m < opts.m_min) m = opts.m_min;
      if (oracle.inside(m)) {
        hi = m;
        if (m == opts.m_min) {
          GaugeResult r;
          r.value = ExtendedValue::finite(0.0);
          r.oracle_calls = oracle.calls();
          r.attained = Tri::unknown;
          return r;
        }
        m *= 0.5;
      } else {
        lo = m;
        break;
      }
    }
  } else {
    lo = 1.0;
    double m = 2.0;
    while (true) {
      if (m > opts.m_cap) m = opts.m_cap;
      if (oracle.inside(m)) {
        hi = m;
        break;
      }
      lo = m;
      if (m == opts.m_cap) {
        GaugeResult r;
        r.value = ExtendedValue::infinity();
        r.oracle_calls = oracle.calls();
        r.attained = Tri::unknown;
        return r;
      }
      m *= 2.0;
    }
  }
  std::tie(lo, hi) = bisect(oracle, lo, hi, true, opts);
  return finish(a, x, lo, hi, oracle);
}

GaugeResult gauge_grid(const AcceptanceSet& a, const Position& x,
                       const GaugeOptions& opts) {
  RayOracle oracle(a, x, opts);
  const double decades = std::log10(opts.m_cap / opts.m_min);
  const int steps = static_cast<int>(std::ceil(decades * opts.ray_grid));
  double prev = 0.0;
  for (int k = 0; k <= steps; ++k) {
    double m = opts.m_min * std::pow(10.0, static_cast<double>(k) / opts.ray_grid);
    if (k == steps) m = opts.m_cap;
    if (!oracle.inside(m)) {
      prev = m;
      continue;
    }
    GaugeResult r;
    if (k == 0) {
      r.value = ExtendedValue::finite(0.0);
      r.oracle_calls = oracle.calls();
    } else {
      auto [lo, hi] = bisect(oracle, prev, m, true, opts);
      r = finish(a, x, lo, hi, oracle);
      r.attained = Tri::unknown;
    }
    r.approximate = true;
    return r;
  }
  GaugeResult r;
  r.value = ExtendedValue::infinity();
  r.oracle_calls = oracle.calls();
  r.approximate = true;
  return r;
}

}  // namespace

void GaugeOptions::validate() const {
  if (!(m_min > 0.0 && m_min < m_cap))
    throw InputError("gauge options need 0 < m_min < m_cap");
  if (!(tol_rel > 0.0 && tol_abs > 0.0))
    throw InputError("gauge tolerances must be positive");
  if (ray_grid < 1 || max_oracle_calls < 1)
    throw InputError("gauge grid and budget must be positive");
}

GaugeBudgetError::GaugeBudgetError(double lo, double hi)
    : NumericalError("gauge oracle budget exhausted; best bracket [" +
                     format_double(lo) + ", " + format_double(hi) + "]"),
      lo_(lo),
      hi_(hi) {}

GaugeResult minkowski_gauge(const AcceptanceSet& a, const Position& x,
                            const GaugeOptions& opts) {
  opts.validate();
  if (x.is_zero()) {
    GaugeResult r;
    r.oracle_calls = 1;
    const bool zero_in = a.contains(x);
    r.value = zero_in ? ExtendedValue::finite(0.0) : ExtendedValue::infinity();
    r.attained = zero_in ? Tri::yes : Tri::unknown;
    return r;
  }
  if (a.flags().star_shaped == Tri::yes) return gauge_star(a, x, opts);
  return gauge_grid(a, x, opts);
}

GaugeResult cogauge(const AcceptanceSet& a, const Position& x,
                    const GaugeOptions& opts) {
  opts.validate();
  if (x.is_zero()) {
    GaugeResult r;
    r.oracle_calls = 1;
    r.value = a.contains(x) ? ExtendedValue::infinity() : ExtendedValue::finite(0.0);
    return r;
  }
  RayOracle oracle(a, x, opts);
  if (oracle.inside(opts.m_cap)) {
    GaugeResult r;
    r.value = ExtendedValue::infinity();
    r.oracle_calls = oracle.calls();
    return r;
  }
  double lo = 0.0, hi = 0.0;  // lo inside, hi outside
  if (oracle.inside(1.0)) {
    lo = 1.0;
    double m = 2.0;
    while (true) {
      if (m > opts.m_cap) m = opts.m_cap;
      if (!oracle.inside(m)) {
        hi = m;
        break;
      }
      lo = m;
      m *= 2.0;
    }
  } else {
    hi = 1.0;
    double m = 0.5;
    while (true) {
      if (m < opts.m_min) m = opts.m_min;
      if (oracle.inside(m)) {
        lo = m;
        break;
      }
      hi = m;
      if (m == opts.m_min) {
        GaugeResult r;
        r.value = ExtendedValue::finite(0.0);
        r.oracle_calls = oracle.calls();
        return r;
      }
      m *= 0.5;
    }
  }
  std::tie(lo, hi) = bisect(oracle, lo, hi, false, opts);
  GaugeResult r;
  r.value = ExtendedValue::finite(lo);
  r.bracket = std::make_pair(lo, hi);
  r.oracle_calls = oracle.calls();
  r.boundary_point = x / lo;
  return r;
}

DeviationFunctional deviation_from_set(const AcceptanceSet& a,
                                       const GaugeOptions& opts) {
  const SetFlags& f = a.flags();
  Axioms ax;
  const Tri admissible = tri_and(
      tri_and(f.star_shaped, f.radially_bounded_nonconst), f.stable_scalar_add);
  ax.nonneg = admissible == Tri::yes ? Tri::yes : Tri::unknown;
  ax.translation_insensitive = f.stable_scalar_add == Tri::yes ? Tri::yes : Tri::unknown;
  ax.positive_homogeneous = Tri::yes;
  ax.convex = f.convex == Tri::yes ? Tri::yes : Tri::unknown;
  ax.law_invariant = f.law_invariant == Tri::yes ? Tri::yes : Tri::unknown;
  ax.lower_semicontinuous = f.closed == Tri::yes ? Tri::yes : Tri::unknown;
  return DeviationFunctional(
      [a, opts](const MarketSpace&, const Position& x) {
        return minkowski_gauge(a, x, opts).value;
      },
      ax, "gauge(" + a.label() + ")");
}

ExtendedValue shift_infimum_gauge(const AcceptanceSet& a, const Position& x,
                                  const GaugeOptions& opts,
                                  const ShiftSearchConfig& search) {
  if (x.is_constant() && a.contains(Position::zero(x.size())))
    return ExtendedValue::finite(0.0);
  auto f = [&](double c) { return minkowski_gauge(a, x - c, opts).value.value(); };
  const ShiftMinimum best = minimize_shift(f, x, search, a.flags().convex == Tri::yes);
  return ExtendedValue::finite(best.value);
}

}  // namespace minkdev
