#include "edvw/median.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "edvw/errors.hpp"

namespace edvw {

WeightedMedian weighted_median(std::span<const double> x, std::span<const double> mu) {
  if (x.size() != mu.size()) throw DomainError("weighted_median: length mismatch");
  if (x.empty()) throw DomainError("weighted_median: empty input");

  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && a < b);
  });

  double total = 0.0;
  for (double m : mu) {
    if (!(m > 0.0)) throw DomainError("weighted_median: weights must be positive");
    total += m;
  }

  // Smallest c with weight(x <= c) >= total / 2 minimizes the objective.
  double below = 0.0;
  double center = x[order.back()];
  for (std::size_t k = 0; k < order.size(); ++k) {
    below += mu[order[k]];
    bool last_of_run = k + 1 == order.size() || x[order[k + 1]] != x[order[k]];
    if (last_of_run && 2.0 * below >= total) {
      center = x[order[k]];
      break;
    }
  }

  double objective = 0.0;
  for (std::size_t v = 0; v < x.size(); ++v) objective += mu[v] * std::abs(x[v] - center);
  return {center, objective};
}

}  // namespace edvw
