#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "minkdev/functional.hpp"
#include "minkdev/market.hpp"
#include "minkdev/polytope.hpp"

namespace minkdev {

struct SetFlags {
  Tri star_shaped = Tri::unknown;
  Tri convex = Tri::unknown;
  Tri closed = Tri::unknown;
  Tri stable_scalar_add = Tri::unknown;
  Tri radially_bounded_nonconst = Tri::unknown;
  Tri law_invariant = Tri::unknown;
  Tri contains_zero = Tri::unknown;
};

using Membership = std::function<bool(const Position&)>;

// Membership oracle over positions of one space, with declared structure.
// Values are immutable; copies share the oracle.
class AcceptanceSet {
 public:
  AcceptanceSet(MarketSpace space, Membership membership, SetFlags flags,
                std::string label, std::optional<Polytope> exact_form = std::nullopt);

  bool contains(const Position& x) const { return (*membership_)(x); }

  const MarketSpace& space() const { return space_; }
  const SetFlags& flags() const { return flags_; }
  const std::string& label() const { return label_; }
  const std::optional<Polytope>& exact_form() const { return exact_form_; }
  // Marks sets built as a complement; boundary probes use the cogauge.
  bool is_complement() const { return complement_; }

  AcceptanceSet with_flags(SetFlags flags) const;
  AcceptanceSet with_label(std::string label) const;
  AcceptanceSet with_complement_marker(bool marked) const;

 private:
  MarketSpace space_;
  std::shared_ptr<const Membership> membership_;
  SetFlags flags_;
  std::string label_;
  std::optional<Polytope> exact_form_;
  bool complement_ = false;
};

}  // namespace minkdev
