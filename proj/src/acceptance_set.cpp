#include "minkdev/acceptance_set.hpp"

#include "minkdev/errors.hpp"

namespace minkdev {

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::no: return "no";
    case Tri::yes: return "yes";
    case Tri::unknown: return "unknown";
  }
  return "unknown";
}

AcceptanceSet::AcceptanceSet(MarketSpace space, Membership membership,
                             SetFlags flags, std::string label,
                             std::optional<Polytope> exact_form)
    : space_(std::move(space)),
      membership_(std::make_shared<const Membership>(std::move(membership))),
      flags_(flags),
      label_(std::move(label)),
      exact_form_(std::move(exact_form)) {
  if (!*membership_) throw InputError("acceptance set needs a membership oracle");
}

AcceptanceSet AcceptanceSet::with_flags(SetFlags flags) const {
  AcceptanceSet out = *this;
  out.flags_ = flags;
  return out;
}

AcceptanceSet AcceptanceSet::with_label(std::string label) const {
  AcceptanceSet out = *this;
  out.label_ = std::move(label);
  return out;
}

AcceptanceSet AcceptanceSet::with_complement_marker(bool marked) const {
  AcceptanceSet out = *this;
  out.complement_ = marked;
  return out;
}

}  // namespace minkdev
