#include "minkdev/shift_search.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "minkdev/errors.hpp"

namespace minkdev {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

struct EarlyStop {};

}  // namespace

ShiftMinimum minimize_shift(const std::function<double(double)>& f,
                            const Position& x, const ShiftSearchConfig& cfg,
                            bool convex, double stop_below) {
  ShiftMinimum best;
  best.approximate = !convex;
  auto eval = [&](double c) {
    const double v = f(c);
    if (v < best.value) {
      best.value = v;
      best.argmin = c;
    }
    if (v <= stop_below) throw EarlyStop{};
    return v;
  };

  const int npts = std::max(3, convex ? cfg.convex_grid : cfg.grid);
  const double lo_x = x.min();
  const double hi_x = x.max();
  double reach = std::max(1.0, hi_x - lo_x);

  try {
    while (true) {
      const double a = std::max(-cfg.c_max, lo_x - reach);
      const double b = std::min(cfg.c_max, hi_x + reach);
      const bool widest = a <= -cfg.c_max && b >= cfg.c_max;
      if (!(a < b)) throw NumericalError("shift search window is empty");

      std::vector<double> cs(static_cast<std::size_t>(npts));
      std::vector<double> vals(cs.size());
      for (int k = 0; k < npts; ++k) {
        cs[k] = a + (b - a) * k / (npts - 1);
        vals[k] = eval(cs[k]);
      }
      const auto it = std::min_element(vals.begin(), vals.end());
      const auto i = static_cast<std::size_t>(it - vals.begin());
      if (std::isinf(*it)) {
        if (widest) return best;
        reach *= 4.0;
        continue;
      }
      const bool at_left = i == 0 && vals[0] < vals[1];
      const bool at_right = i + 1 == vals.size() && vals[i] < vals[i - 1];
      if (at_left || at_right) {
        if (widest)
          throw NumericalError("minimizing shift escaped [-" +
                               format_double(cfg.c_max) + ", " +
                               format_double(cfg.c_max) + "]");
        reach *= 4.0;
        continue;
      }

      double lo = cs[i == 0 ? 0 : i - 1];
      double hi = cs[std::min(i + 1, cs.size() - 1)];
      double c1 = hi - kInvPhi * (hi - lo);
      double c2 = lo + kInvPhi * (hi - lo);
      double f1 = eval(c1);
      double f2 = eval(c2);
      for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= cfg.width_tol * std::max(1.0, std::abs(mid))) break;
        if (f1 <= f2) {
          hi = c2;
          c2 = c1;
          f2 = f1;
          c1 = hi - kInvPhi * (hi - lo);
          f1 = eval(c1);
        } else {
          lo = c1;
          c1 = c2;
          f1 = f2;
          c2 = lo + kInvPhi * (hi - lo);
          f2 = eval(c2);
        }
      }
      return best;
    }
  } catch (const EarlyStop&) {
    return best;
  }
}

}  // namespace minkdev
