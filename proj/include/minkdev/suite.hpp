#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace minkdev {

struct SuiteCheck {
  std::string group;
  std::string name;
  bool passed = true;
  double metric = 0.0;     // worst gap or count of counterexamples
  double tolerance = 0.0;
  std::string detail;
  std::optional<std::uint64_t> trial;  // failing trial, replayable from the seed
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::vector<std::string> only;  // empty runs every group
  double tol_scale = 1.0;         // multiplies every tolerance
};

// gauge, hull, algebra, shift, comonotone, law, monotone, duality, level,
// measure_algebra.
std::vector<std::string> suite_groups();

// Throws InputError on an unknown group name in `only`.
std::vector<SuiteCheck> run_suite(const SuiteOptions& opts);

}  // namespace minkdev
