#include "minkdev/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "minkdev/errors.hpp"
#include "minkdev/gauge.hpp"

namespace minkdev {

namespace {

constexpr int kMaxDepth = 64;

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key))
    throw InputError(std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

double number(const Json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw InputError(std::string(what) + " must be a number");
}

double number_or(const Json& obj, const char* key, double fallback) {
  return obj.contains(key) ? number(obj.at(key), key) : fallback;
}

std::string text(const Json& v, const char* what) {
  if (!v.is_string()) throw InputError(std::string(what) + " must be a string");
  return v.get<std::string>();
}

Position vector_of(const Json& v, std::size_t n, const char* what) {
  if (!v.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const Json& e : v) out.push_back(number(e, what));
  if (out.size() != n)
    throw InputError(std::string(what) + " has " + std::to_string(out.size()) +
                     " entries, expected " + std::to_string(n));
  for (double x : out)
    if (!std::isfinite(x)) throw InputError(std::string(what) + " must be finite");
  return Position(std::move(out));
}

std::vector<Position> vectors_of(const Json& v, std::size_t n, const char* what) {
  if (!v.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<Position> out;
  for (const Json& e : v) out.push_back(vector_of(e, n, what));
  return out;
}

MarketSpace parse_space(const Json& doc) {
  const Json& probs = doc.contains("space") ? field(doc.at("space"), "probs") : field(doc, "probs");
  if (!probs.is_array()) throw InputError("probs must be an array");
  std::vector<double> p;
  for (const Json& e : probs) p.push_back(number(e, "probs"));
  return MarketSpace(std::move(p));
}

struct Resolver {
  const MarketSpace& space;
  const Json& doc;

  const Json& named(const char* section, const std::string& name) const {
    if (doc.contains(section) && doc.at(section).contains(name)) return doc.at(section).at(name);
    throw InputError(std::string("unknown ") + section + " entry \"" + name + "\"");
  }

  ErrorFunctional error(const Json& d) const {
    const ErrorKind kind = parse_error_kind(text(field(d, "error"), "error"));
    double param = 0.0;
    if (kind == ErrorKind::lp_norm) param = number_or(d, "p", 2.0);
    if (kind == ErrorKind::koenker_bassett) param = number(field(d, "alpha"), "alpha");
    return builtin_error(kind, param);
  }

  DeviationFunctional measure(const Json& d, int depth) const {
    if (depth > kMaxDepth) throw InputError("measure references nest too deeply");
    if (d.is_string()) {
      const std::string name = d.get<std::string>();
      if (doc.contains("measures") && doc.at("measures").contains(name) &&
          doc.at("measures").at(name) != d)
        return measure(doc.at("measures").at(name), depth + 1);
      return builtin_deviation(parse_measure_kind(name));
    }
    if (!d.is_object()) throw InputError("measure description must be an object or a name");
    if (d.contains("measure")) {
      const Json& m = d.at("measure");
      if (m.is_object()) return measure(m, depth + 1);
      // Builtin names win; anything else refers to a named measure.
      const std::string name = text(m, "measure");
      MeasureKind kind;
      try {
        kind = parse_measure_kind(name);
      } catch (const InputError&) {
        return measure(named("measures", name), depth + 1);
      }
      const double alpha = kind == MeasureKind::esd ? number(field(d, "alpha"), "alpha") : 0.0;
      return builtin_deviation(kind, alpha);
    }
    if (d.contains("error")) {
      ShiftSearchConfig search;
      search.c_max = number_or(d, "c_max", search.c_max);
      return deviation_from_error(error(d), search);
    }
    if (d.contains("gauge")) return deviation_from_set(set(d.at("gauge"), depth + 1));
    if (d.contains("op")) {
      const std::string op = text(d.at("op"), "op");
      if (op == "scale")
        return scaled(measure(field(d, "of"), depth + 1), number(field(d, "lambda"), "lambda"));
      const Json& of = field(d, "of");
      if (!of.is_array() || of.size() < 2) throw InputError("op needs at least two measures");
      DeviationFunctional acc = measure(of.at(0), depth + 1);
      for (std::size_t i = 1; i < of.size(); ++i) {
        const DeviationFunctional next = measure(of.at(i), depth + 1);
        if (op == "min") acc = min_of(acc, next);
        else if (op == "max") acc = max_of(acc, next);
        else if (op == "sum") acc = sum_of(acc, next);
        else throw InputError("unknown measure op \"" + op + "\"");
      }
      return acc;
    }
    throw InputError("measure description needs one of measure, error, gauge, op");
  }

  AcceptanceSet set(const Json& d, int depth) const {
    if (depth > kMaxDepth) throw InputError("set references nest too deeply");
    if (d.is_string()) {
      const std::string name = d.get<std::string>();
      return set(named("sets", name), depth + 1).with_label(name);
    }
    const std::string kind = text(field(d, "kind"), "kind");
    const std::size_t n = space.size();
    auto of = [&] { return set(field(d, "of"), depth + 1); };
    if (kind == "sublevel") {
      const double k = number_or(d, "k", 1.0);
      if (d.contains("error")) return error_sublevel_set(space, error(d), k);
      const Json& m = field(d, "measure");
      // {"kind": "sublevel", "measure": "esd", "alpha": 0.1} keeps the
      // measure parameters beside the level.
      if (m.is_string() && d.contains("alpha")) {
        Json md = {{"measure", m}, {"alpha", d.at("alpha")}};
        return sublevel_set(space, measure(md, depth + 1), k);
      }
      return sublevel_set(space, measure(m, depth + 1), k);
    }
    if (kind == "ball") {
      double p = 2.0;
      if (d.contains("norm")) {
        const Json& norm = d.at("norm");
        p = norm.is_object() ? number(field(norm, "p"), "p") : number(norm, "norm");
      }
      std::optional<Position> center;
      if (d.contains("center")) center = vector_of(d.at("center"), n, "center");
      return norm_ball(space, p, number_or(d, "radius", 1.0), center);
    }
    if (kind == "halfspaces" || kind == "vertices") return polytope_set(parse_polytope(space, d));
    if (kind == "combine") {
      const std::string op = text(field(d, "op"), "op");
      SetOp sop;
      if (op == "union") sop = SetOp::set_union;
      else if (op == "intersection") sop = SetOp::set_intersection;
      else throw InputError("unknown combine op \"" + op + "\"");
      const Json& list = field(d, "of");
      if (!list.is_array() || list.empty()) throw InputError("combine needs a non-empty list");
      AcceptanceSet acc = set(list.at(0), depth + 1);
      for (std::size_t i = 1; i < list.size(); ++i) acc = combine(acc, set(list.at(i), depth + 1), sop);
      return acc;
    }
    if (kind == "add_constants") return add_constants(of());
    if (kind == "star_hull")
      return star_hull(of(), static_cast<int>(number_or(d, "resolution", 64)));
    if (kind == "complement") return complement(of());
    if (kind == "scale") return scale_set(of(), number(field(d, "lambda"), "lambda"));
    if (kind == "law_hull") return law_invariant_hull(of());
    if (kind == "orthant") return nonneg_orthant(space);
    if (kind == "constants") return constants_set(space);
    if (kind == "whole") return whole_space(space);
    if (kind == "empty") return empty_set(space);
    throw InputError("unknown set kind \"" + kind + "\"");
  }
};

template <class Parse>
auto named_list(const Json& doc, const char* section, Parse parse) {
  std::vector<std::pair<std::string, decltype(parse(Json()))>> out;
  if (!doc.contains(section)) return out;
  const Json& obj = doc.at(section);
  if (!obj.is_object()) throw InputError(std::string(section) + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) out.emplace_back(it.key(), parse(it.value()));
  return out;
}

}  // namespace

const NamedSet& Scenario::find_set(const std::string& name) const {
  for (const NamedSet& s : sets)
    if (s.name == name) return s;
  throw InputError("unknown set \"" + name + "\"");
}

Polytope parse_polytope(const MarketSpace& space, const Json& d) {
  const std::size_t n = space.size();
  if (d.contains("vertices")) return Polytope::from_vertices(space, vectors_of(d.at("vertices"), n, "vertices"));
  if (d.contains("rows")) {
    std::vector<Position> rows = vectors_of(d.at("rows"), n, "rows");
    std::vector<double> rhs;
    const Json& r = field(d, "rhs");
    if (!r.is_array()) throw InputError("rhs must be an array");
    for (const Json& e : r) rhs.push_back(number(e, "rhs"));
    return Polytope::from_halfspaces(space, std::move(rows), std::move(rhs));
  }
  throw InputError("polytope needs vertices or rows/rhs");
}

DeviationFunctional parse_measure(const MarketSpace& space, const Json& desc, const Json& doc) {
  return Resolver{space, doc}.measure(desc, 0);
}

AcceptanceSet parse_set(const MarketSpace& space, const Json& desc, const Json& doc) {
  return Resolver{space, doc}.set(desc, 0);
}

Scenario parse_scenario(const Json& doc) {
  if (!doc.is_object()) throw InputError("scenario must be a JSON object");
  if (!doc.contains("v") || !doc.at("v").is_number_integer() || doc.at("v").get<int>() != 1)
    throw InputError("scenario needs schema version \"v\": 1");
  Scenario sc{parse_space(doc), {}, {}, {}, {}, {}, {}};
  const Resolver r{sc.space, doc};
  const std::size_t n = sc.space.size();
  sc.positions = named_list(doc, "positions", [&](const Json& v) { return vector_of(v, n, "position"); });
  for (auto& [name, m] : named_list(doc, "measures", [&](const Json& v) { return r.measure(v, 0); }))
    sc.measures.push_back({name, m});
  for (auto& [name, s] : named_list(doc, "sets", [&](const Json& v) { return r.set(v, 0); }))
    sc.sets.push_back({name, s.with_label(name)});

  if (doc.contains("checks")) {
    const Json& checks = doc.at("checks");
    if (!checks.is_array()) throw InputError("checks must be an array");
    for (const Json& c : checks) {
      CheckTarget t;
      if (c.contains("set")) {
        const Json& s = c.at("set");
        t.set = r.set(s, 0);
        t.name = s.is_string() ? s.get<std::string>() : t.set->label();
        if (c.contains("properties"))
          for (const Json& p : c.at("properties")) t.properties.push_back(parse_set_property(text(p, "property")));
      } else if (c.contains("measure")) {
        const Json& m = c.at("measure");
        t.measure = r.measure(m, 0);
        t.name = m.is_string() ? m.get<std::string>() : t.measure->label();
        if (c.contains("axioms"))
          for (const Json& a : c.at("axioms")) t.axioms.push_back(parse_axiom(text(a, "axiom")));
      } else {
        throw InputError("check target needs a set or a measure");
      }
      sc.checks.push_back(std::move(t));
    }
  }
  if (doc.contains("boundary")) sc.boundary_set = text(field(doc.at("boundary"), "set"), "set");
  if (doc.contains("polar")) sc.polar_set = text(field(doc.at("polar"), "set"), "set");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

Json to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json to_json(const ExtendedValue& v) {
  return v.is_infinite() ? Json("inf") : Json(v.value());
}

Json to_json(const Position& x) {
  Json out = Json::array();
  for (double v : x.values()) out.push_back(to_json(v));
  return out;
}

Json to_json(const PropertyReport& r, std::uint64_t seed) {
  Json out;
  out["property"] = r.property;
  out["verdict"] = to_string(r.verdict);
  out["trials"] = r.trials;
  out["exact"] = r.exact;
  if (!r.note.empty()) out["note"] = r.note;
  if (r.counterexample) {
    Json ce;
    ce["trial"] = r.counterexample->trial;
    ce["seed"] = seed;
    Json pos = Json::array();
    for (const Position& p : r.counterexample->positions) pos.push_back(to_json(p));
    ce["positions"] = pos;
    Json sc = Json::array();
    for (double s : r.counterexample->scalars) sc.push_back(to_json(s));
    ce["scalars"] = sc;
    out["counterexample"] = ce;
  }
  return out;
}

Json to_json(const GapReport& r) {
  Json out;
  out["samples"] = r.samples;
  out["max_gap"] = to_json(r.max_gap);
  out["infinite_agreements"] = r.infinite_agreements;
  out["infinite_mismatches"] = r.infinite_mismatches;
  if (r.worst) out["worst"] = to_json(*r.worst);
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

Json to_json(const PolarForm& p) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < p.normals.size(); ++i) {
    Json row;
    row["normal"] = to_json(p.normals[i]);
    row["rhs"] = p.rhs[i];
    row["equality"] = static_cast<bool>(p.equality[i]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace minkdev
