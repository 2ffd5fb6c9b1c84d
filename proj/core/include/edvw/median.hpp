#pragma once

#include <span>

namespace edvw {

struct WeightedMedian {
  double center;     // minimizer c* of sum_v mu(v) |x_v - c|
  double objective;  // the minimal value
};

// mu-weighted median of x. When the minimizer is an interval, the smallest
// optimal c is returned. Throws DomainError on length mismatch or when a weight
// is not positive.
WeightedMedian weighted_median(std::span<const double> x, std::span<const double> mu);

}  // namespace edvw
