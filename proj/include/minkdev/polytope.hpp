#pragma once

#include <cstddef>
#include <vector>

#include "minkdev/market.hpp"

namespace minkdev {

// Minimal generators of a polyhedron: P = conv(vertices) + cone(rays) + span(lines).
struct Generators {
  std::vector<Position> vertices;
  std::vector<Position> rays;
  std::vector<Position> lines;
};

// Polyhedron in payoff coordinates.  Halfspace rows act through the
// probability-weighted pairing: X is inside iff <row_i, X> <= rhs_i for all i.
// Vertex form is the bounded polytope conv(vertices).
class Polytope {
 public:
  static Polytope from_vertices(MarketSpace space, std::vector<Position> vertices);
  static Polytope from_halfspaces(MarketSpace space, std::vector<Position> rows,
                                  std::vector<double> rhs);

  bool is_vertex_form() const { return vertex_form_; }
  const MarketSpace& space() const { return space_; }
  const std::vector<Position>& vertices() const { return vertices_; }
  const std::vector<Position>& rows() const { return rows_; }
  const std::vector<double>& rhs() const { return rhs_; }

  // Convex-combination feasibility (vertex form) or halfspace satisfaction.
  // Tolerances are relative to |X| so that tiny positions near a vertex
  // at the origin are judged by direction, not by absolute distance.
  bool contains(const Position& x) const;
  bool contains_origin() const;

  // Vertices, extreme rays and lineality basis.  Halfspace inputs are
  // enumerated from tight constraint subsets and require n <= 4.
  Generators generators() const;

  // Largest absolute coordinate over vertices or rows.
  double scale() const;

 private:
  Polytope(MarketSpace space) : space_(std::move(space)) {}

  MarketSpace space_;
  bool vertex_form_ = true;
  std::vector<Position> vertices_;
  std::vector<Position> rows_;
  std::vector<double> rhs_;
};

// Feasibility of X as a convex combination of `points` (L1 projection LP
// followed by a direct residual check).
bool in_convex_hull(const std::vector<Position>& points, const Position& x);

// Halfspace enumeration is limited to this many outcomes.
inline constexpr std::size_t kMaxEnumerationDim = 4;

}  // namespace minkdev
