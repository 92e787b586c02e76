#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "survdiff/errors.hpp"

namespace survdiff {

namespace detail {

inline double pairwise_sum_impl(const double* xs, std::size_t n) {
  // Below this size a straight loop is both fast and accurate enough; the
  // recursion above it keeps the error growth logarithmic in n.
  constexpr std::size_t kBase = 32;
  if (n <= kBase) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += xs[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(xs, half) + pairwise_sum_impl(xs + half, n - half);
}

}  // namespace detail

// Pairwise (cascade) summation.  Used for every O(n^2) statistic accumulation
// so that results are reproducible and accurate independent of data size.
inline double pairwise_sum(std::span<const double> xs) {
  return detail::pairwise_sum_impl(xs.data(), xs.size());
}

// Mean and sample standard deviation (n-1 denominator; 0 for n < 2).
struct mean_sd {
  double mean = 0.0;
  double sd = 0.0;
};

inline mean_sd mean_and_sd(std::span<const double> xs) {
  if (xs.empty()) throw error(errc::empty_sample, "mean_and_sd: empty input");
  const double n = static_cast<double>(xs.size());
  const double m = pairwise_sum(xs) / n;
  if (xs.size() < 2) return {m, 0.0};
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = xs[i] - m;
    sq[i] = d * d;
  }
  return {m, std::sqrt(pairwise_sum(sq) / (n - 1.0))};
}

// Right-continuous step function: value(t) = values[i] on [knots[i], knots[i+1]),
// initial_value before the first knot.  Knots are strictly increasing.
struct step_curve {
  double initial_value = 0.0;
  std::vector<double> knots;
  std::vector<double> values;

  double at(double t) const {
    // index of last knot <= t
    std::size_t lo = 0, hi = knots.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (knots[mid] <= t)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo == 0 ? initial_value : values[lo - 1];
  }

  // Left limit: value just before t.
  double at_left(double t) const {
    std::size_t lo = 0, hi = knots.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (knots[mid] < t)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo == 0 ? initial_value : values[lo - 1];
  }
};

}  // namespace survdiff
