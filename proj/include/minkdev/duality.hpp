#pragma once

#include <optional>
#include <vector>

#include "minkdev/gauge.hpp"
#include "minkdev/lp.hpp"
#include "minkdev/polytope.hpp"
#include "minkdev/property.hpp"

namespace minkdev {

// {y : <g_i, y> <= rhs_i (or = 0 for lineality directions)} under the
// probability-weighted pairing.  Always contains 0.
struct PolarForm {
  MarketSpace space;
  std::vector<Position> normals;
  std::vector<double> rhs;        // 1 for vertices, 0 for rays and lines
  std::vector<bool> equality;     // lineality directions of the primal

  bool contains(const Position& y, double tol = 1e-9) const;
};

// Vertex form: one constraint per non-zero vertex.  Halfspace form is
// enumerated into generators first (n <= 4).
PolarForm polar(const Polytope& p);

struct SupportValue {
  ExtendedValue value;
  std::optional<Position> argmax;  // maximizing y when finite
  int iterations = 0;
};

// h(X) = sup{<X, y> : y in the polar}, by LP.
SupportValue support_point(const PolarForm& polar, const Position& x,
                           const SimplexOptions& opts = {});
ExtendedValue support_function(const PolarForm& polar, const Position& x);

struct GapReport {
  int samples = 0;
  double max_gap = 0.0;
  int infinite_agreements = 0;   // both sides infinite
  int infinite_mismatches = 0;   // exactly one side infinite
  std::optional<Position> worst;
  std::string note;

  bool within(double tol) const { return infinite_mismatches == 0 && max_gap < tol; }
};

// Gauge of P (membership oracle + bisection) against the support function
// of its polar on sampled positions.  P must contain the origin.
GapReport dual_representation_check(const Polytope& p, const SamplerConfig& sampler,
                                    const GaugeOptions& opts = {});

struct BipolarReport {
  int samples = 0;
  int disagreements = 0;
  std::optional<Position> witness;
};

// Membership in the bipolar (support function of the polar <= 1) against
// membership in conv(P u {0}).  Vertex form only.
BipolarReport bipolar_check(const Polytope& p, const SamplerConfig& sampler);

struct EnvelopeResult {
  ExtendedValue value;           // E[X] - inf_{Q} E[XQ]
  std::optional<Position> q;     // attaining Q = 1 - y
};

// Requires 0 in P and P + R = P (every constraint annihilates constants).
EnvelopeResult risk_envelope(const Polytope& p, const Position& x);

struct QuantileRepReport {
  bool precondition_ok = true;
  std::string note;
  int samples = 0;
  double max_gap = 0.0;
  std::optional<Position> worst;
};

// Compares the gauge with max over polar extreme points y of
// (1/n) sum sort(X)_i sort(y)_i on a uniform space.  P must be invariant
// under permutations of outcomes.
QuantileRepReport discrete_quantile_rep_check(const Polytope& p,
                                              const SamplerConfig& sampler,
                                              const GaugeOptions& opts = {});

}  // namespace minkdev
