#include "minkdev/polytope.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "minkdev/errors.hpp"
#include "minkdev/lp.hpp"

namespace minkdev {

namespace {

double sup_norm(const Position& x) {
  double m = 0.0;
  for (double v : x.values()) m = std::max(m, std::abs(v));
  return m;
}

// Calls visit(subset) for every k-subset of {0..m-1}, in lexicographic order.
void for_each_subset(std::size_t m, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool near_duplicate(const std::vector<Position>& pts, const Eigen::VectorXd& v,
                    double tol) {
  for (const Position& p : pts) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      d = std::max(d, std::abs(p[i] - v(static_cast<Eigen::Index>(i))));
    if (d <= tol) return true;
  }
  return false;
}

Position to_position(const Eigen::VectorXd& v) {
  return Position(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

Polytope Polytope::from_vertices(MarketSpace space, std::vector<Position> vertices) {
  if (vertices.empty()) throw InputError("polytope needs at least one vertex");
  for (const Position& v : vertices)
    if (v.size() != space.size())
      throw InputError("vertex dimension does not match the space");
  Polytope p(std::move(space));
  p.vertex_form_ = true;
  p.vertices_ = std::move(vertices);
  return p;
}

Polytope Polytope::from_halfspaces(MarketSpace space, std::vector<Position> rows,
                                   std::vector<double> rhs) {
  if (rows.size() != rhs.size())
    throw InputError("halfspace rows and rhs differ in length");
  for (const Position& r : rows)
    if (r.size() != space.size())
      throw InputError("halfspace row dimension does not match the space");
  for (double b : rhs)
    if (!std::isfinite(b)) throw InputError("halfspace rhs must be finite");
  Polytope p(std::move(space));
  p.vertex_form_ = false;
  p.rows_ = std::move(rows);
  p.rhs_ = std::move(rhs);
  return p;
}

double Polytope::scale() const {
  double s = 0.0;
  for (const Position& v : vertex_form_ ? vertices_ : rows_)
    s = std::max(s, sup_norm(v));
  return s;
}

bool Polytope::contains(const Position& x) const {
  if (x.size() != space_.size())
    throw InputError("position dimension does not match the polytope");
  if (vertex_form_) return in_convex_hull(vertices_, x);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    double s = 0.0, mag = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double t = space_.prob(j) * rows_[i][j] * x[j];
      s += t;
      mag += std::abs(t);
    }
    if (s > rhs_[i] + 1e-12 * (std::abs(rhs_[i]) + mag)) return false;
  }
  return true;
}

bool Polytope::contains_origin() const {
  if (!vertex_form_)
    return std::all_of(rhs_.begin(), rhs_.end(), [](double b) { return b >= 0.0; });
  return in_convex_hull(vertices_, Position::zero(space_.size()));
}

bool in_convex_hull(const std::vector<Position>& points, const Position& x) {
  if (points.empty()) return false;
  const std::size_t n = x.size();
  const std::size_t nv = points.size();
  // Variables: lambda (nv), r+ (n), r- (n).
  LinearProgram lp;
  lp.objective.assign(nv + 2 * n, 0.0);
  for (std::size_t i = 0; i < 2 * n; ++i) lp.objective[nv + i] = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(nv + 2 * n, 0.0);
    for (std::size_t j = 0; j < nv; ++j) row[j] = points[j][i];
    row[nv + i] = 1.0;
    row[nv + n + i] = -1.0;
    lp.add_row(std::move(row), Sense::eq, x[i]);
  }
  std::vector<double> sum_row(nv + 2 * n, 0.0);
  for (std::size_t j = 0; j < nv; ++j) sum_row[j] = 1.0;
  lp.add_row(std::move(sum_row), Sense::eq, 1.0);

  const LPOutcome res = solve_lp(lp);
  if (!res.optimal()) return false;

  std::vector<double> lambda(res.point.begin(), res.point.begin() + nv);
  double total = 0.0;
  for (double& l : lambda) {
    l = std::max(l, 0.0);
    total += l;
  }
  if (!(total > 0.0)) return false;
  double scale = 0.0;
  for (const Position& p : points) scale = std::max(scale, sup_norm(p));
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < nv; ++j) s += lambda[j] / total * points[j][i];
    residual = std::max(residual, std::abs(s - x[i]));
  }
  const double xs = sup_norm(x);
  const double tol = xs > 0.0 ? 1e-9 * xs : 1e-12 * std::max(1.0, scale);
  return residual <= tol;
}

Generators Polytope::generators() const {
  Generators g;
  if (vertex_form_) {
    g.vertices = vertices_;
    return g;
  }
  const std::size_t n = space_.size();
  if (n > kMaxEnumerationDim)
    throw InputError("halfspace enumeration supports at most " +
                     std::to_string(kMaxEnumerationDim) + " outcomes");

  // Euclidean normals: <a, x>_p = (p o a) . x.
  std::vector<Eigen::VectorXd> normals;
  std::vector<double> b;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Eigen::VectorXd a(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j)
      a(static_cast<Eigen::Index>(j)) = space_.prob(j) * rows_[i][j];
    if (a.lpNorm<Eigen::Infinity>() == 0.0) {
      if (rhs_[i] < 0.0) throw InputError("halfspace system is empty");
      continue;
    }
    normals.push_back(a);
    b.push_back(rhs_[i]);
  }
  const std::size_t m = normals.size();
  const auto ni = static_cast<Eigen::Index>(n);

  Eigen::MatrixXd A(static_cast<Eigen::Index>(m), ni);
  for (std::size_t i = 0; i < m; ++i) A.row(static_cast<Eigen::Index>(i)) = normals[i].transpose();

  // Lineality space = kernel of the constraint matrix.
  Eigen::MatrixXd lines(ni, 0);
  if (m == 0) {
    lines = Eigen::MatrixXd::Identity(ni, ni);
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.rank() < ni) lines = lu.kernel();
  }
  const auto d = static_cast<std::size_t>(lines.cols());
  for (Eigen::Index k = 0; k < lines.cols(); ++k) {
    Eigen::VectorXd l = lines.col(k);
    l /= l.lpNorm<Eigen::Infinity>();
    g.lines.push_back(to_position(l));
  }

  auto feasible = [&](const Eigen::VectorXd& x) {
    for (std::size_t i = 0; i < m; ++i) {
      const double s = normals[i].dot(x);
      const double mag = normals[i].cwiseAbs().dot(x.cwiseAbs());
      if (s > b[i] + 1e-9 * (std::abs(b[i]) + mag)) return false;
    }
    return true;
  };

  // Vertices of P restricted to the orthogonal complement of its lines.
  for_each_subset(m, n - d, [&](const std::vector<std::size_t>& s) {
    Eigen::MatrixXd M(ni, ni);
    Eigen::VectorXd r(ni);
    Eigen::Index row = 0;
    for (std::size_t i : s) {
      M.row(row) = normals[i].transpose();
      r(row++) = b[i];
    }
    for (Eigen::Index k = 0; k < lines.cols(); ++k) {
      M.row(row) = lines.col(k).transpose();
      r(row++) = 0.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (lu.rank() < ni) return;
    const Eigen::VectorXd x = lu.solve(r);
    if (!feasible(x)) return;
    const double tol = 1e-9 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
    if (!near_duplicate(g.vertices, x, tol)) g.vertices.push_back(to_position(x));
  });
  if (g.vertices.empty()) throw InputError("halfspace system is empty");

  // Extreme rays of the recession cone {Ad <= 0} within the same complement.
  if (n > d) {
    for_each_subset(m, n - d - 1, [&](const std::vector<std::size_t>& s) {
      Eigen::MatrixXd M(static_cast<Eigen::Index>(n - 1), ni);
      Eigen::Index row = 0;
      for (std::size_t i : s) M.row(row++) = normals[i].transpose();
      for (Eigen::Index k = 0; k < lines.cols(); ++k)
        M.row(row++) = lines.col(k).transpose();
      Eigen::VectorXd dir;
      if (M.rows() == 0) {
        dir = Eigen::VectorXd::Unit(ni, 0);  // n == 1, no lines
      } else {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (lu.rank() != ni - 1) return;
        dir = lu.kernel().col(0);
      }
      dir /= dir.lpNorm<Eigen::Infinity>();
      for (double sgn : {1.0, -1.0}) {
        const Eigen::VectorXd r = sgn * dir;
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i)
          ok = normals[i].dot(r) <= 1e-9 * normals[i].cwiseAbs().sum();
        if (ok && !near_duplicate(g.rays, r, 1e-9)) g.rays.push_back(to_position(r));
      }
    });
  }
  return g;
}

}  // namespace minkdev
