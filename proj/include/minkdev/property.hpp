#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minkdev/market.hpp"
#include "minkdev/random.hpp"

namespace minkdev {

struct SamplerConfig {
  int trials = 500;
  double range = 5.0;       // coordinates drawn from [-range, range]
  std::uint64_t seed = 0;
  double m_cap = 1e6;       // ray scans for boundedness / absorbency
  double tol = 1e-8;        // functional comparisons, relative to magnitude
};

struct Counterexample {
  std::vector<Position> positions;
  std::vector<double> scalars;
  std::uint64_t trial = 0;  // replay with trial_seed(seed, trial)
};

enum class Verdict { pass, fail, precondition_failed };

std::string to_string(Verdict v);

// Result of a falsification run.  "pass" means no counterexample was found.
struct PropertyReport {
  std::string property;
  Verdict verdict = Verdict::pass;
  std::optional<Counterexample> counterexample;
  int trials = 0;
  bool exact = false;  // decided from an exact polytope form
  std::string note;

  bool passed() const { return verdict == Verdict::pass; }
};

// Rearrangement of X that is equal in distribution: a random permutation
// inside each class of equally likely outcomes.
Position random_equal_law_rearrangement(const MarketSpace& space,
                                        const Position& x, Rng& rng);

// Y = g(X) with g non-decreasing and 1-Lipschitz plus a random shift, so
// that Y is below X in the dispersive order.
Position random_dispersive_contraction(const Position& x, Rng& rng);

}  // namespace minkdev
