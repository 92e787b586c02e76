#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "survdiff/errors.hpp"
#include "survdiff/numeric.hpp"
#include "survdiff/sample.hpp"

namespace survdiff {

// Product-limit jump weights attached to the ordered observations.
// weights[i] is the mass the Kaplan-Meier distribution estimate places on
// the i-th ordered observation (0 for censored slots); total_mass is their
// sum, which falls short of 1 when the largest observation is censored.
struct km_weight_set {
  std::vector<double> weights;
  double total_mass = 0.0;
};

namespace detail {

// Core of the weight recursion for a group of size m whose members arrive
// through `next()` as (event flag) in sorted order.  The i-th ordered
// observation (1-based) gets weight
//   delta_i / (m - i + 1) * prod_{j<i} ((m - j) / (m - j + 1))^{delta_j},
// i.e. censored slots get zero mass and shift the remaining mass outward.
// Ties are deliberately processed one observation at a time in the sorted
// (event-first) order; no collapsing into tied blocks.
class km_weight_walker {
 public:
  explicit km_weight_walker(std::size_t m) : m_(static_cast<double>(m)) {}

  // Returns the weight of the next ordered observation.
  double step(bool event) {
    const double at_risk = m_ - i_;
    ++i_;
    if (!event) return 0.0;
    const double w = carry_ / at_risk;
    carry_ *= (at_risk - 1.0) / at_risk;
    return w;
  }

 private:
  double m_;
  double i_ = 0.0;     // observations consumed so far
  double carry_ = 1.0; // running product of survival factors
};

}  // namespace detail

// Weights for one ordered sample.
inline km_weight_set km_weights(const ordered_sample& s) {
  if (s.size() == 0) throw error(errc::empty_sample, "km_weights: empty sample");
  km_weight_set out;
  out.weights.resize(s.size());
  detail::km_weight_walker walk(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.weights[i] = walk.step(s.events[i] != 0);
  out.total_mass = pairwise_sum(out.weights);
  return out;
}

// Distinct-event-time risk summary for one ordered sample: times with at
// least one event, event counts d, and true at-risk counts Y (number of
// observations with time >= that event time).
struct event_table {
  std::vector<double> times;
  std::vector<double> d;
  std::vector<double> y;
};

inline event_table tabulate_events(const ordered_sample& s) {
  event_table tab;
  const std::size_t n = s.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    double d = 0.0;
    while (j < n && s.times[j] == s.times[i]) {
      if (s.events[j]) d += 1.0;
      ++j;
    }
    if (d > 0.0) {
      tab.times.push_back(s.times[i]);
      tab.d.push_back(d);
      tab.y.push_back(static_cast<double>(n - i));
    }
    i = j;
  }
  return tab;
}

// Kaplan-Meier survival curve S(t) = prod_{t_j <= t} (1 - d_j / Y_j),
// right-continuous, S(0-) = 1, knots at distinct event times.
inline step_curve km_survival(const ordered_sample& s) {
  if (s.size() == 0) throw error(errc::empty_sample, "km_survival: empty sample");
  const event_table tab = tabulate_events(s);
  step_curve curve;
  curve.initial_value = 1.0;
  curve.knots = tab.times;
  curve.values.resize(tab.times.size());
  double surv = 1.0;
  for (std::size_t j = 0; j < tab.times.size(); ++j) {
    surv *= 1.0 - tab.d[j] / tab.y[j];
    curve.values[j] = surv;
  }
  return curve;
}

// Nelson-Aalen cumulative hazard L(t) = sum_{t_j <= t} d_j / Y_j.
inline step_curve nelson_aalen(const ordered_sample& s) {
  if (s.size() == 0) throw error(errc::empty_sample, "nelson_aalen: empty sample");
  const event_table tab = tabulate_events(s);
  step_curve curve;
  curve.initial_value = 0.0;
  curve.knots = tab.times;
  curve.values.resize(tab.times.size());
  double cum = 0.0;
  for (std::size_t j = 0; j < tab.times.size(); ++j) {
    cum += tab.d[j] / tab.y[j];
    curve.values[j] = cum;
  }
  return curve;
}

}  // namespace survdiff
