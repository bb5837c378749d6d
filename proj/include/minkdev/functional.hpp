#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "minkdev/market.hpp"

namespace minkdev {

// Declared attribute: a "yes" is a promise checked by the falsifiers.
enum class Tri { no, yes, unknown };

std::string_view to_string(Tri t);
inline Tri tri(bool b) { return b ? Tri::yes : Tri::no; }
inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::no || b == Tri::no) return Tri::no;
  if (a == Tri::yes && b == Tri::yes) return Tri::yes;
  return Tri::unknown;
}

struct Axioms {
  Tri nonneg = Tri::unknown;
  Tri translation_insensitive = Tri::unknown;
  Tri positive_homogeneous = Tri::unknown;
  Tri convex = Tri::unknown;
  Tri comonotone_additive = Tri::unknown;
  Tri law_invariant = Tri::unknown;
  Tri lower_range_dominated = Tri::unknown;
  // Sub-level sets are closed (lower semicontinuity).
  Tri lower_semicontinuous = Tri::unknown;
};

using Evaluator =
    std::function<ExtendedValue(const MarketSpace&, const Position&)>;

// Functional D: positions -> [0, inf] with declared axioms.
class DeviationFunctional {
 public:
  DeviationFunctional(Evaluator eval, Axioms axioms, std::string label)
      : eval_(std::move(eval)), axioms_(axioms), label_(std::move(label)) {}

  ExtendedValue operator()(const MarketSpace& space, const Position& x) const {
    return eval_(space, x);
  }

  const Axioms& axioms() const { return axioms_; }
  Axioms& axioms() { return axioms_; }
  const std::string& label() const { return label_; }

 private:
  Evaluator eval_;
  Axioms axioms_;
  std::string label_;
};

// Measure of error: vanishes at 0, used through min_c eps(X - c).
class ErrorFunctional {
 public:
  ErrorFunctional(Evaluator eval, bool convex, std::string label)
      : eval_(std::move(eval)), convex_(convex), label_(std::move(label)) {}

  ExtendedValue operator()(const MarketSpace& space, const Position& x) const {
    return eval_(space, x);
  }

  bool convex() const { return convex_; }
  const std::string& label() const { return label_; }

 private:
  Evaluator eval_;
  bool convex_;
  std::string label_;
};

}  // namespace minkdev
