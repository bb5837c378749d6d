#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "minkdev/deviations.hpp"
#include "minkdev/duality.hpp"
#include "minkdev/errors.hpp"
#include "minkdev/gauge.hpp"
#include "minkdev/scenario.hpp"
#include "minkdev/sets.hpp"
#include "minkdev/suite.hpp"

using namespace minkdev;

namespace {

enum Exit { ok = 0, property_failure = 1, input_error = 2, numerical_failure = 3 };

struct RunConfig {
  std::string command;
  std::string scenario_path;
  std::string output_path;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  int rays = 720;
  std::vector<std::string> only;
  std::string format = "json";
  bool format_given = false;
  int trials = 0;
};

void emit(const RunConfig& cfg, const std::string& body) {
  if (cfg.output_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw InputError("cannot write " + cfg.output_path);
  out << body;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_value(const ExtendedValue& v) { return v.to_string(); }

SamplerConfig sampler_for(const RunConfig& cfg, int default_trials) {
  SamplerConfig s;
  s.seed = cfg.seed;
  s.trials = cfg.trials > 0 ? cfg.trials : default_trials;
  if (cfg.tol) s.tol = *cfg.tol;
  return s;
}

int cmd_eval(const RunConfig& cfg) {
  const Scenario sc = load_scenario(cfg.scenario_path);
  std::vector<std::string> columns;
  for (const NamedMeasure& m : sc.measures) columns.push_back(m.name);
  for (const NamedSet& s : sc.sets) columns.push_back("gauge(" + s.name + ")");

  std::vector<std::vector<ExtendedValue>> table;
  for (const auto& [name, x] : sc.positions) {
    std::vector<ExtendedValue> row;
    for (const NamedMeasure& m : sc.measures) row.push_back(m.measure(sc.space, x));
    for (const NamedSet& s : sc.sets) row.push_back(minkowski_gauge(s.set, x).value);
    table.push_back(std::move(row));
  }

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "position";
    for (const std::string& c : columns) os << "," << c;
    os << "\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
      os << sc.positions[i].first;
      for (const ExtendedValue& v : table[i]) os << "," << csv_value(v);
      os << "\n";
    }
    emit(cfg, os.str());
  } else {
    Json rows = Json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
      Json row;
      row["position"] = sc.positions[i].first;
      Json values;
      for (std::size_t j = 0; j < columns.size(); ++j) values[columns[j]] = to_json(table[i][j]);
      row["values"] = values;
      rows.push_back(row);
    }
    Json out;
    out["columns"] = columns;
    out["rows"] = rows;
    emit(cfg, dump(out));
  }
  return ok;
}

int cmd_boundary(const RunConfig& cfg) {
  const Scenario sc = load_scenario(cfg.scenario_path);
  if (sc.space.size() != 2) throw InputError("boundary needs a space with two outcomes");
  if (sc.sets.empty()) throw InputError("boundary needs a set");
  if (cfg.rays < 1) throw InputError("--rays must be positive");
  const AcceptanceSet& a = sc.boundary_set ? sc.find_set(*sc.boundary_set).set : sc.sets.front().set;

  const double pi = std::acos(-1.0);
  std::ostringstream csv;
  csv << "theta,x0,x1,finite\n";
  Json rows = Json::array();
  for (int k = 0; k < cfg.rays; ++k) {
    const double theta = 2.0 * pi * k / cfg.rays;
    const Position d{std::cos(theta), std::sin(theta)};
    // Complements are probed from the outside in.
    const ExtendedValue v = a.is_complement() ? cogauge(a, d).value : minkowski_gauge(a, d).value;
    const bool finite = v.is_infinite() || v.value() > 0.0;
    Json x0, x1;
    std::string s0, s1;
    if (finite) {
      const double r = v.is_infinite() ? 0.0 : 1.0 / v.value();
      x0 = r * d[0];
      x1 = r * d[1];
      s0 = format_double(r * d[0]);
      s1 = format_double(r * d[1]);
    } else {
      // The whole ray lies in the set: the boundary sits at infinity.
      auto far = [](double c) { return std::abs(c) < 1e-12 ? std::string("0") : c > 0 ? "inf" : "-inf"; };
      s0 = far(d[0]);
      s1 = far(d[1]);
      x0 = s0 == "0" ? Json(0.0) : Json(s0);
      x1 = s1 == "0" ? Json(0.0) : Json(s1);
    }
    csv << format_double(theta) << "," << s0 << "," << s1 << "," << (finite ? 1 : 0) << "\n";
    Json row;
    row["theta"] = theta;
    row["x0"] = x0;
    row["x1"] = x1;
    row["finite"] = finite;
    rows.push_back(row);
  }
  if (cfg.format_given && cfg.format == "json") {
    Json out;
    out["set"] = a.label();
    out["rays"] = cfg.rays;
    out["boundary"] = rows;
    emit(cfg, dump(out));
  } else {
    emit(cfg, csv.str());
  }
  return ok;
}

int cmd_polar(const RunConfig& cfg) {
  const Scenario sc = load_scenario(cfg.scenario_path);
  const NamedSet* target = nullptr;
  if (sc.polar_set) {
    target = &sc.find_set(*sc.polar_set);
  } else {
    for (const NamedSet& s : sc.sets)
      if (s.set.exact_form()) {
        target = &s;
        break;
      }
  }
  if (!target || !target->set.exact_form())
    throw InputError("polar needs a set given by vertices or halfspaces");
  const Polytope& p = *target->set.exact_form();
  const PolarForm pf = polar(p);

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "rhs,equality";
    for (std::size_t i = 0; i < sc.space.size(); ++i) os << ",g" << i;
    os << "\n";
    for (std::size_t k = 0; k < pf.normals.size(); ++k) {
      os << format_double(pf.rhs[k]) << "," << (pf.equality[k] ? 1 : 0);
      for (double v : pf.normals[k].values()) os << "," << format_double(v);
      os << "\n";
    }
    emit(cfg, os.str());
    return ok;
  }

  Json out;
  out["set"] = target->name;
  out["polar"] = to_json(pf);
  Json support = Json::array();
  for (const auto& [name, x] : sc.positions) {
    const SupportValue sv = support_point(pf, x);
    Json row;
    row["position"] = name;
    row["support"] = to_json(sv.value);
    row["gauge"] = to_json(minkowski_gauge(target->set, x).value);
    if (sv.argmax) row["argmax"] = to_json(*sv.argmax);
    support.push_back(row);
  }
  out["support"] = support;
  if (p.contains_origin()) {
    Json dual = to_json(dual_representation_check(p, sampler_for(cfg, 100)));
    dual["seed"] = cfg.seed;
    out["dual_check"] = dual;
  }
  emit(cfg, dump(out));
  return ok;
}

int cmd_check(const RunConfig& cfg) {
  const Scenario sc = load_scenario(cfg.scenario_path);
  const SamplerConfig s = sampler_for(cfg, 500);
  Json out = Json::array();
  bool all_pass = true;
  for (const CheckTarget& t : sc.checks) {
    Json reports = Json::array();
    if (t.set) {
      for (SetProperty p : t.properties) {
        const PropertyReport r = check_property(*t.set, p, s);
        all_pass = all_pass && r.passed();
        reports.push_back(to_json(r, s.seed));
      }
    } else {
      for (Axiom a : t.axioms) {
        const PropertyReport r = check_axiom(*t.measure, sc.space, a, s);
        all_pass = all_pass && r.passed();
        reports.push_back(to_json(r, s.seed));
      }
    }
    Json entry;
    entry["target"] = t.name;
    entry["kind"] = t.set ? "set" : "measure";
    entry["reports"] = reports;
    out.push_back(entry);
  }
  emit(cfg, dump(out));
  return all_pass ? ok : property_failure;
}

int cmd_suite(const RunConfig& cfg) {
  SuiteOptions opts;
  opts.seed = cfg.seed;
  opts.only = cfg.only;
  if (cfg.tol) opts.tol_scale = *cfg.tol;
  const std::vector<SuiteCheck> checks = run_suite(opts);

  Json list = Json::array();
  int failed = 0;
  std::ostringstream digest;
  for (const SuiteCheck& c : checks) {
    Json j;
    j["group"] = c.group;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["metric"] = to_json(c.metric);
    j["tolerance"] = c.tolerance;
    j["detail"] = c.detail;
    if (c.trial) j["trial"] = *c.trial;
    list.push_back(j);
    digest << (c.passed ? "PASS " : "FAIL ") << c.group << ": " << c.name << " [" << c.detail
           << ", metric " << format_double(c.metric) << "]\n";
    if (!c.passed) {
      ++failed;
      digest << "  replay: minkdev suite --seed " << cfg.seed << " --only " << c.group;
      if (c.trial) digest << " (trial " << *c.trial << ")";
      digest << "\n";
    }
  }
  digest << checks.size() - failed << "/" << checks.size() << " invariants hold\n";
  Json out;
  out["seed"] = cfg.seed;
  out["passed"] = failed == 0;
  out["checks"] = list;
  emit(cfg, dump(out));
  std::cerr << digest.str();
  return failed == 0 ? ok : property_failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deviation measures as gauges of acceptance sets"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format;

  auto common = [&](CLI::App* sub, bool needs_scenario) {
    auto* opt = sub->add_option("--scenario", cfg.scenario_path, "scenario JSON file");
    if (needs_scenario) opt->required();
    sub->add_option("--out", cfg.output_path, "output file (default: stdout)");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--tol", cfg.tol, "tolerance override");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto* eval = app.add_subcommand("eval", "evaluate measures and gauges at positions");
  common(eval, true);
  auto* boundary = app.add_subcommand("boundary", "sample a 2-D set boundary along rays");
  common(boundary, true);
  boundary->add_option("--rays", cfg.rays, "number of ray directions");
  auto* pol = app.add_subcommand("polar", "polar form and support function of a polytope");
  common(pol, true);
  pol->add_option("--trials", cfg.trials, "samples for the dual check");
  auto* check = app.add_subcommand("check", "falsify declared set properties and axioms");
  common(check, true);
  check->add_option("--trials", cfg.trials, "trials per property");
  auto* suite = app.add_subcommand("suite", "run the invariant suite");
  common(suite, false);
  suite->add_option("--only", cfg.only, "restrict to groups")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }
  cfg.format_given = !format.empty();
  if (cfg.format_given) cfg.format = format;

  try {
    if (eval->parsed()) return cmd_eval(cfg);
    if (boundary->parsed()) return cmd_boundary(cfg);
    if (pol->parsed()) return cmd_polar(cfg);
    if (check->parsed()) return cmd_check(cfg);
    if (suite->parsed()) return cmd_suite(cfg);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return numerical_failure;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}
