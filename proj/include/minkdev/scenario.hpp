#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "minkdev/acceptance_set.hpp"
#include "minkdev/deviations.hpp"
#include "minkdev/duality.hpp"
#include "minkdev/functional.hpp"
#include "minkdev/market.hpp"
#include "minkdev/property.hpp"
#include "minkdev/sets.hpp"

namespace minkdev {

using Json = nlohmann::ordered_json;

struct NamedMeasure {
  std::string name;
  DeviationFunctional measure;
};

struct NamedSet {
  std::string name;
  AcceptanceSet set;
};

struct CheckTarget {
  std::string name;
  std::optional<AcceptanceSet> set;
  std::optional<DeviationFunctional> measure;
  std::vector<SetProperty> properties;
  std::vector<Axiom> axioms;
};

// Parsed scenario document.  Named entries keep their file order.
//
//   {"v": 1, "probs": [...], "positions": {"X": [...]},
//    "measures": {"s": {"measure": "sigma"}},
//    "sets": {"A": {"kind": "sublevel", "measure": "sigma", "k": 1}},
//    "checks": [{"set": "A", "properties": ["convex"]}],
//    "boundary": {"set": "A"}, "polar": {"set": "P"}}
struct Scenario {
  MarketSpace space;
  std::vector<std::pair<std::string, Position>> positions;
  std::vector<NamedMeasure> measures;
  std::vector<NamedSet> sets;
  std::vector<CheckTarget> checks;
  std::optional<std::string> boundary_set;
  std::optional<std::string> polar_set;

  const NamedSet& find_set(const std::string& name) const;
};

// Throws InputError on schema violations (including a missing "v": 1).
Scenario parse_scenario(const Json& doc);
Scenario load_scenario(const std::string& path);

// Standalone pieces, resolved against named entries of `doc` when a
// string reference is given.
DeviationFunctional parse_measure(const MarketSpace& space, const Json& desc,
                                  const Json& doc = Json::object());
AcceptanceSet parse_set(const MarketSpace& space, const Json& desc,
                        const Json& doc = Json::object());
Polytope parse_polytope(const MarketSpace& space, const Json& desc);

// Finite values as numbers, infinity as the string "inf".
Json to_json(const ExtendedValue& v);
Json to_json(double v);
Json to_json(const Position& x);
Json to_json(const PropertyReport& r, std::uint64_t seed);
Json to_json(const GapReport& r);
Json to_json(const PolarForm& p);

}  // namespace minkdev
