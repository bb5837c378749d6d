#include "minkdev/market.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "minkdev/errors.hpp"
#include "minkdev/random.hpp"

namespace minkdev {

namespace {

// Slack when comparing a cumulative probability against a quantile level.
constexpr double kCumulativeSlack = 1e-12;

void require_same_size(const Position& x, const Position& y) {
  if (x.size() != y.size()) throw InputError("position lengths differ");
}

void require_on_space(const MarketSpace& space, const Position& x) {
  if (x.size() != space.size())
    throw InputError("position length " + std::to_string(x.size()) +
                     " does not match space size " +
                     std::to_string(space.size()));
}

}  // namespace

MarketSpace::MarketSpace(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InputError("market space needs at least one outcome");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw InputError("outcome probabilities must be strictly positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InputError("outcome probabilities must sum to 1 (got " +
                     format_double(total) + ")");
}

MarketSpace MarketSpace::uniform(std::size_t n) {
  if (n == 0) throw InputError("market space needs at least one outcome");
  return MarketSpace(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

bool MarketSpace::is_uniform() const {
  const double target = 1.0 / static_cast<double>(probs_.size());
  return std::all_of(probs_.begin(), probs_.end(),
                     [&](double p) { return std::abs(p - target) <= 1e-12; });
}

Position::Position(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_)
    if (!std::isfinite(v)) throw InputError("position entries must be finite");
}

Position::Position(std::initializer_list<double> values)
    : Position(std::vector<double>(values)) {}

Position Position::constant(std::size_t n, double c) {
  return Position(std::vector<double>(n, c));
}

double Position::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double Position::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

bool Position::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0; });
}

bool Position::is_constant(double tol) const {
  if (values_.empty()) return true;
  return max() - min() <= tol;
}

Position& Position::operator+=(const Position& rhs) {
  require_same_size(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
  return *this;
}

Position& Position::operator-=(const Position& rhs) {
  require_same_size(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs.values_[i];
  return *this;
}

Position& Position::operator+=(double c) {
  for (double& v : values_) v += c;
  return *this;
}

Position& Position::operator-=(double c) {
  for (double& v : values_) v -= c;
  return *this;
}

Position& Position::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Position& Position::operator/=(double s) {
  for (double& v : values_) v /= s;
  return *this;
}

Position operator+(Position lhs, const Position& rhs) { return lhs += rhs; }
Position operator-(Position lhs, const Position& rhs) { return lhs -= rhs; }
Position operator+(Position lhs, double c) { return lhs += c; }
Position operator-(Position lhs, double c) { return lhs -= c; }
Position operator*(double s, Position rhs) { return rhs *= s; }
Position operator*(Position lhs, double s) { return lhs *= s; }
Position operator/(Position lhs, double s) { return lhs /= s; }
Position operator-(Position x) { return x *= -1.0; }

ExtendedValue ExtendedValue::finite(double v) {
  if (std::isnan(v) || v < 0.0)
    throw InputError("extended value must be a non-negative number");
  if (std::isinf(v)) return infinity();
  ExtendedValue out;
  out.v_ = v;
  return out;
}

ExtendedValue ExtendedValue::infinity() {
  ExtendedValue out;
  out.infinite_ = true;
  return out;
}

double ExtendedValue::value() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : v_;
}

std::string ExtendedValue::to_string() const {
  return infinite_ ? std::string("inf") : format_double(v_);
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double expectation(const MarketSpace& space, const Position& x) {
  require_on_space(space, x);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += space.prob(i) * x[i];
  return acc;
}

double pairing(const MarketSpace& space, const Position& x, const Position& y) {
  require_on_space(space, x);
  require_on_space(space, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += space.prob(i) * x[i] * y[i];
  return acc;
}

double QuantileProfile::quantile(double t) const {
  for (std::size_t k = 0; k < values.size(); ++k)
    if (cumulative[k] >= t - kCumulativeSlack) return values[k];
  return values.back();
}

QuantileProfile quantile_profile(const MarketSpace& space, const Position& x,
                                 double merge_tol) {
  require_on_space(space, x);
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  QuantileProfile out;
  double cum = 0.0;
  for (std::size_t idx : order) {
    cum += space.prob(idx);
    if (!out.values.empty() && x[idx] - out.values.back() <= merge_tol) {
      out.cumulative.back() = cum;
    } else {
      out.values.push_back(x[idx]);
      out.cumulative.push_back(cum);
    }
  }
  return out;
}

double left_quantile(const MarketSpace& space, const Position& x, double t) {
  if (!(t > 0.0 && t < 1.0))
    throw InputError("quantile level must lie in (0, 1)");
  return quantile_profile(space, x).quantile(t);
}

bool equal_in_distribution(const MarketSpace& space, const Position& x,
                           const Position& y, double tol) {
  const QuantileProfile px = quantile_profile(space, x, tol);
  const QuantileProfile py = quantile_profile(space, y, tol);
  if (px.values.size() != py.values.size()) return false;
  for (std::size_t k = 0; k < px.values.size(); ++k) {
    if (std::abs(px.values[k] - py.values[k]) > tol) return false;
    if (std::abs(px.cumulative[k] - py.cumulative[k]) > tol) return false;
  }
  return true;
}

bool is_comonotone(const Position& x, const Position& y) {
  require_same_size(x, y);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if ((x[i] - x[j]) * (y[i] - y[j]) < 0.0) return false;
  return true;
}

std::vector<double> quantile_breakpoints(const MarketSpace& space,
                                         const Position& x,
                                         const Position& y) {
  std::vector<double> pts;
  for (const Position* p : {&x, &y}) {
    const QuantileProfile prof = quantile_profile(space, *p);
    for (double c : prof.cumulative)
      if (c < 1.0 - kCumulativeSlack) pts.push_back(c);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double c : pts)
    if (out.empty() || c - out.back() > kCumulativeSlack) out.push_back(c);
  return out;
}

bool dispersive_leq(const MarketSpace& space, const Position& y,
                    const Position& x, double tol) {
  const QuantileProfile px = quantile_profile(space, x);
  const QuantileProfile py = quantile_profile(space, y);
  std::vector<double> cuts = quantile_breakpoints(space, x, y);
  cuts.insert(cuts.begin(), 0.0);
  cuts.push_back(1.0);
  // Both quantile functions are constant between consecutive cuts.
  std::vector<double> qx, qy;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    qx.push_back(px.quantile(mid));
    qy.push_back(py.quantile(mid));
  }
  for (std::size_t v = 0; v < qx.size(); ++v)
    for (std::size_t u = v + 1; u < qx.size(); ++u)
      if (qx[u] - qx[v] < qy[u] - qy[v] - tol) return false;
  return true;
}

double lp_norm(const MarketSpace& space, const Position& x, double p) {
  require_on_space(space, x);
  if (!(p >= 1.0)) throw InputError("norm exponent must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : x.values()) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    acc += space.prob(i) * std::pow(std::abs(x[i]), p);
  return p == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / p);
}

Statistics statistics(const MarketSpace& space, const Position& x, double p) {
  return Statistics{x.min(), x.max(), lp_norm(space, x, p)};
}

std::pair<Position, Position> sample_comonotone_pair(std::uint64_t seed,
                                                     const MarketSpace& space,
                                                     double scale) {
  if (!(scale > 0.0)) throw InputError("comonotone sampler needs scale > 0");
  Rng rng(mix_seed(seed));
  const std::size_t n = space.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);

  auto sorted_draw = [&] {
    std::vector<double> v(n);
    for (double& e : v) e = uniform(rng, -scale, scale);
    // Occasional ties exercise flat stretches of the common ordering.
    if (n > 1 && uniform(rng, 0.0, 1.0) < 0.2) v[1] = v[0];
    std::sort(v.begin(), v.end());
    return v;
  };
  const std::vector<double> a = sorted_draw();
  const std::vector<double> b = sorted_draw();
  std::vector<double> x(n), y(n);
  for (std::size_t k = 0; k < n; ++k) {
    x[perm[k]] = a[k];
    y[perm[k]] = b[k];
  }
  return {Position(std::move(x)), Position(std::move(y))};
}

Position random_position(Rng& rng, std::size_t n, double range) {
  std::vector<double> v(n);
  for (double& e : v) e = uniform(rng, -range, range);
  return Position(std::move(v));
}

MarketSpace random_space(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& e : w) {
    e = uniform(rng, 0.2, 1.0);
    total += e;
  }
  for (double& e : w) e /= total;
  // Push the rounding residue into the largest entry so the sum is exact
  // to well within the validation tolerance.
  double sum = std::accumulate(w.begin(), w.end(), 0.0);
  *std::max_element(w.begin(), w.end()) += 1.0 - sum;
  return MarketSpace(std::move(w));
}

}  // namespace minkdev
