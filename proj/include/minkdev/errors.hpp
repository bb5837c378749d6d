#pragma once

#include <stdexcept>
#include <string>

namespace minkdev {

// Malformed input: bad parameters, invalid spaces, unparsable scenarios.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine could not reach a verdict (budget exhausted,
// minimizer escaped its search window, LP iteration cap).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace minkdev
