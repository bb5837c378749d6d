#include "minkdev/property.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minkdev {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::precondition_failed: return "precondition_failed";
  }
  return "?";
}

Position random_equal_law_rearrangement(const MarketSpace& space,
                                        const Position& x, Rng& rng) {
  const std::size_t n = space.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return space.prob(a) < space.prob(b);
  });
  std::vector<double> out(x.values().begin(), x.values().end());
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n &&
           std::abs(space.prob(order[end]) - space.prob(order[start])) <= 1e-12)
      ++end;
    std::vector<std::size_t> cls(order.begin() + static_cast<std::ptrdiff_t>(start),
                                 order.begin() + static_cast<std::ptrdiff_t>(end));
    std::vector<std::size_t> shuffled = cls;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t k = 0; k < cls.size(); ++k) out[cls[k]] = x[shuffled[k]];
    start = end;
  }
  return Position(std::move(out));
}

Position random_dispersive_contraction(const Position& x, Rng& rng) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> out(n);
  double acc = uniform(rng, -2.0, 2.0);
  out[order[0]] = acc;
  for (std::size_t k = 1; k < n; ++k) {
    const double gap = x[order[k]] - x[order[k - 1]];
    acc += gap * uniform(rng, 0.0, 1.0);
    out[order[k]] = acc;
  }
  return Position(std::move(out));
}

}  // namespace minkdev
