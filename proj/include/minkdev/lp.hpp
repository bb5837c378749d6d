#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace minkdev {

enum class Sense { le, eq, ge };

// maximize objective . x  subject to  rows[i] . x (sense) rhs[i].
// Variables are non-negative unless flagged free.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<Sense> senses;
  std::vector<double> rhs;
  std::vector<bool> free_vars;  // empty means all non-negative

  std::size_t num_vars() const { return objective.size(); }
  void add_row(std::vector<double> row, Sense sense, double b);
};

struct SimplexOptions {
  double pivot_tol = 1e-11;
  double optimality_tol = 1e-9;
  double feasibility_tol = 1e-9;
  int max_iterations = 10'000;
};

struct LPOutcome {
  enum class Status { optimal, unbounded, infeasible };

  Status status = Status::infeasible;
  double value = 0.0;
  std::vector<double> point;  // optimal point, or the basic point where
                              // unboundedness was detected
  std::vector<double> ray;    // improving direction when unbounded
  int iterations = 0;

  bool optimal() const { return status == Status::optimal; }
  bool unbounded() const { return status == Status::unbounded; }
  bool infeasible() const { return status == Status::infeasible; }
};

std::string to_string(LPOutcome::Status s);

// Dense two-phase tableau simplex with Bland's rule.  Throws NumericalError
// when the iteration cap is reached.
LPOutcome solve_lp(const LinearProgram& lp, const SimplexOptions& opts = {});

}  // namespace minkdev
