#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace minkdev {

// Finite probability space: n outcomes with strictly positive probabilities
// summing to one.
class MarketSpace {
 public:
  explicit MarketSpace(std::vector<double> probs);

  static MarketSpace uniform(std::size_t n);

  std::size_t size() const { return probs_.size(); }
  double prob(std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  // True when every outcome carries the same probability (within 1e-12).
  bool is_uniform() const;

  bool operator==(const MarketSpace&) const = default;

 private:
  std::vector<double> probs_;
};

// A random payoff: one finite value per outcome.
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<double> values);
  Position(std::initializer_list<double> values);

  static Position constant(std::size_t n, double c);
  static Position zero(std::size_t n) { return constant(n, 0.0); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& data() const { return values_; }

  double min() const;
  double max() const;
  bool is_zero() const;
  // All entries equal within tol (absolute).
  bool is_constant(double tol = 0.0) const;

  Position& operator+=(const Position& rhs);
  Position& operator-=(const Position& rhs);
  Position& operator+=(double c);
  Position& operator-=(double c);
  Position& operator*=(double s);
  Position& operator/=(double s);

  bool operator==(const Position&) const = default;

 private:
  std::vector<double> values_;
};

Position operator+(Position lhs, const Position& rhs);
Position operator-(Position lhs, const Position& rhs);
Position operator+(Position lhs, double c);
Position operator-(Position lhs, double c);
Position operator*(double s, Position rhs);
Position operator*(Position lhs, double s);
Position operator/(Position lhs, double s);
Position operator-(Position x);

// Element of [0, +inf].
class ExtendedValue {
 public:
  ExtendedValue() = default;

  static ExtendedValue finite(double v);
  static ExtendedValue infinity();

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  // +inf as a double when infinite.
  double value() const;

  // "inf" or the shortest round-trip decimal form.
  std::string to_string() const;

  bool operator==(const ExtendedValue&) const = default;
  friend bool operator<(const ExtendedValue& a, const ExtendedValue& b) {
    return a.value() < b.value();
  }

 private:
  double v_ = 0.0;
  bool infinite_ = false;
};

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

// --- distributional statistics -------------------------------------------

double expectation(const MarketSpace& space, const Position& x);

// Probability-weighted pairing <X, Y> = E[XY].
double pairing(const MarketSpace& space, const Position& x, const Position& y);

// Sorted distinct support of X with cumulative probabilities.  Values that
// compare equal exactly are merged; merge_tol > 0 also merges values whose
// gap is at most merge_tol.
struct QuantileProfile {
  std::vector<double> values;
  std::vector<double> cumulative;  // cumulative.back() == 1 up to rounding

  // Left quantile inf{q : F(q) >= t} for t in (0, 1].
  double quantile(double t) const;
};

QuantileProfile quantile_profile(const MarketSpace& space, const Position& x,
                                 double merge_tol = 0.0);

// Left quantile F_X^{-1}(t); t must lie in (0, 1).
double left_quantile(const MarketSpace& space, const Position& x, double t);

bool equal_in_distribution(const MarketSpace& space, const Position& x,
                           const Position& y, double tol = 1e-9);

// Pairwise check (X_i - X_j)(Y_i - Y_j) >= 0 over all outcome pairs.
bool is_comonotone(const Position& x, const Position& y);

// Y is smaller than X in the dispersive order: every quantile spread of X
// dominates the matching spread of Y.  Exact for step quantiles.
bool dispersive_leq(const MarketSpace& space, const Position& y,
                    const Position& x, double tol = 1e-12);

// Breakpoints of the step quantile functions of X and Y merged together
// (strictly inside (0,1), sorted, deduplicated).
std::vector<double> quantile_breakpoints(const MarketSpace& space,
                                         const Position& x,
                                         const Position& y);

struct Statistics {
  double ess_inf = 0.0;
  double ess_sup = 0.0;
  double lp_norm = 0.0;
};

// p in [1, inf]; pass std::numeric_limits<double>::infinity() for the sup norm.
Statistics statistics(const MarketSpace& space, const Position& x, double p);
double lp_norm(const MarketSpace& space, const Position& x, double p);

// Two positions sharing a common outcome ordering, entries in [-scale, scale].
std::pair<Position, Position> sample_comonotone_pair(std::uint64_t seed,
                                                     const MarketSpace& space,
                                                     double scale);

}  // namespace minkdev
