#include "minkdev/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minkdev/errors.hpp"

namespace minkdev {

void LinearProgram::add_row(std::vector<double> row, Sense sense, double b) {
  rows.push_back(std::move(row));
  senses.push_back(sense);
  rhs.push_back(b);
}

std::string to_string(LPOutcome::Status s) {
  switch (s) {
    case LPOutcome::Status::optimal: return "optimal";
    case LPOutcome::Status::unbounded: return "unbounded";
    case LPOutcome::Status::infeasible: return "infeasible";
  }
  return "?";
}

namespace {

// Standard-form tableau: every column non-negative, rows are equalities with
// non-negative right-hand sides, one basic column per row.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), a_(rows, std::vector<double>(cols + 1, 0.0)),
        basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return a_[i][j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i][j]; }
  double& rhs(std::size_t i) { return a_[i][n_]; }
  double rhs(std::size_t i) const { return a_[i][n_]; }
  std::size_t& basic(std::size_t i) { return basis_[i]; }
  std::size_t basic(std::size_t i) const { return basis_[i]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / a_[r][c];
    for (double& v : a_[r]) v *= inv;
    a_[r][c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = a_[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) a_[i][j] -= f * a_[r][j];
      a_[i][c] = 0.0;
    }
    basis_[r] = c;
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<double>> a_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { optimal, unbounded };

struct PhaseOutcome {
  PhaseResult result;
  std::size_t entering = 0;  // column that proved unboundedness
};

// Maximize cost . x over the tableau, restricted to `allowed` entering
// columns.  Bland's rule: lowest improving column enters, lowest basic
// index leaves among ratio ties.
PhaseOutcome run_phase(Tableau& t, const std::vector<double>& cost,
                       const std::vector<bool>& allowed,
                       const SimplexOptions& opts, int& iterations) {
  while (true) {
    if (iterations >= opts.max_iterations)
      throw NumericalError("simplex iteration cap reached (" +
                           std::to_string(opts.max_iterations) + ")");
    std::size_t entering = t.cols();
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!allowed[j]) continue;
      double reduced = cost[j];
      for (std::size_t i = 0; i < t.rows(); ++i)
        reduced -= cost[t.basic(i)] * t.at(i, j);
      if (reduced > opts.optimality_tol) {
        entering = j;
        break;
      }
    }
    if (entering == t.cols()) return {PhaseResult::optimal};

    std::size_t leave = t.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, entering);
      if (a <= opts.pivot_tol) continue;
      const double ratio = t.rhs(i) / a;
      if (leave == t.rows()) {
        leave = i;
        best = ratio;
        continue;
      }
      const double slack = 1e-12 * std::max(1.0, std::abs(best));
      if (ratio < best - slack) {
        leave = i;
        best = ratio;
      } else if (ratio <= best + slack && t.basic(i) < t.basic(leave)) {
        leave = i;
        best = std::min(best, ratio);
      }
    }
    if (leave == t.rows()) return {PhaseResult::unbounded, entering};
    t.pivot(leave, entering);
    ++iterations;
  }
}

}  // namespace

LPOutcome solve_lp(const LinearProgram& lp, const SimplexOptions& opts) {
  const std::size_t nv = lp.num_vars();
  const std::size_t m = lp.rows.size();
  if (lp.senses.size() != m || lp.rhs.size() != m)
    throw InputError("linear program rows, senses and rhs disagree in size");
  for (const auto& row : lp.rows)
    if (row.size() != nv)
      throw InputError("linear program row has wrong number of coefficients");
  auto is_free = [&](std::size_t j) {
    return !lp.free_vars.empty() && lp.free_vars[j];
  };

  // Column layout: structural (split when free), slack/surplus, artificial.
  std::vector<std::size_t> pos_col(nv), neg_col(nv, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    pos_col[j] = cols++;
    if (is_free(j)) neg_col[j] = cols++;
  }

  std::vector<double> sign(m, 1.0);
  std::vector<Sense> sense(lp.senses);
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rhs[i] < 0.0) {
      sign[i] = -1.0;
      if (sense[i] == Sense::le) sense[i] = Sense::ge;
      else if (sense[i] == Sense::ge) sense[i] = Sense::le;
    }
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX), art_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (sense[i] != Sense::eq) slack_col[i] = cols++;
  const std::size_t first_art = cols;
  for (std::size_t i = 0; i < m; ++i)
    if (sense[i] != Sense::le) art_col[i] = cols++;

  Tableau t(m, cols);
  double rhs_scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nv; ++j) {
      const double a = sign[i] * lp.rows[i][j];
      t.at(i, pos_col[j]) = a;
      if (neg_col[j] != SIZE_MAX) t.at(i, neg_col[j]) = -a;
    }
    t.rhs(i) = sign[i] * lp.rhs[i];
    rhs_scale = std::max(rhs_scale, std::abs(t.rhs(i)));
    if (sense[i] == Sense::le) {
      t.at(i, slack_col[i]) = 1.0;
      t.basic(i) = slack_col[i];
    } else {
      if (sense[i] == Sense::ge) t.at(i, slack_col[i]) = -1.0;
      t.at(i, art_col[i]) = 1.0;
      t.basic(i) = art_col[i];
    }
  }

  LPOutcome out;
  int iterations = 0;
  std::vector<bool> allowed(cols, true);

  if (first_art < cols) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = first_art; j < cols; ++j) phase1[j] = -1.0;
    run_phase(t, phase1, allowed, opts, iterations);
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (t.basic(i) >= first_art) infeasibility += t.rhs(i);
    if (infeasibility > opts.feasibility_tol * rhs_scale) {
      out.status = LPOutcome::Status::infeasible;
      out.iterations = iterations;
      return out;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basic(i) < first_art) continue;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (std::abs(t.at(i, j)) > opts.pivot_tol) {
          t.pivot(i, j);
          ++iterations;
          break;
        }
      }
    }
    for (std::size_t j = first_art; j < cols; ++j) allowed[j] = false;
  }

  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    cost[pos_col[j]] = lp.objective[j];
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -lp.objective[j];
  }
  const PhaseOutcome phase2 = run_phase(t, cost, allowed, opts, iterations);

  std::vector<double> column_values(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) column_values[t.basic(i)] = t.rhs(i);
  auto to_original = [&](const std::vector<double>& colvec) {
    std::vector<double> x(nv, 0.0);
    for (std::size_t j = 0; j < nv; ++j) {
      x[j] = colvec[pos_col[j]];
      if (neg_col[j] != SIZE_MAX) x[j] -= colvec[neg_col[j]];
    }
    return x;
  };
  out.point = to_original(column_values);
  out.iterations = iterations;

  if (phase2.result == PhaseResult::unbounded) {
    std::vector<double> dir(cols, 0.0);
    dir[phase2.entering] = 1.0;
    for (std::size_t i = 0; i < m; ++i)
      dir[t.basic(i)] = -t.at(i, phase2.entering);
    out.ray = to_original(dir);
    // Certify: the ray keeps every constraint and improves the objective.
    double gain = 0.0;
    for (std::size_t j = 0; j < nv; ++j) gain += lp.objective[j] * out.ray[j];
    bool ok = gain > 0.0;
    for (std::size_t i = 0; i < m && ok; ++i) {
      double s = 0.0, mag = 0.0;
      for (std::size_t j = 0; j < nv; ++j) {
        s += lp.rows[i][j] * out.ray[j];
        mag += std::abs(lp.rows[i][j] * out.ray[j]);
      }
      const double tol = 1e-9 * std::max(1.0, mag);
      if (lp.senses[i] == Sense::le) ok = s <= tol;
      else if (lp.senses[i] == Sense::ge) ok = s >= -tol;
      else ok = std::abs(s) <= tol;
    }
    for (std::size_t j = 0; j < nv && ok; ++j)
      if (!is_free(j) && out.ray[j] < -1e-9) ok = false;
    if (!ok) throw NumericalError("simplex produced an uncertified ray");
    out.status = LPOutcome::Status::unbounded;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }

  out.status = LPOutcome::Status::optimal;
  double value = 0.0;
  for (std::size_t j = 0; j < nv; ++j) value += lp.objective[j] * out.point[j];
  out.value = value;
  return out;
}

}  // namespace minkdev
