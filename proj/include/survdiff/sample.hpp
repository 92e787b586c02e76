#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "survdiff/errors.hpp"

namespace survdiff {

// One right-censored sample: observed times X_i = min(T_i, C_i) with event
// indicators delta_i = 1{X_i == T_i}.
struct survival_sample {
  std::vector<double> times;
  std::vector<std::uint8_t> events;

  std::size_t size() const noexcept { return times.size(); }
};

// Validates raw (time, event) columns into a survival_sample.
// Times must be finite and non-negative; events must be exactly 0 or 1.
inline survival_sample validate(std::span<const double> times, std::span<const int> events) {
  if (times.empty()) throw error(errc::empty_sample, "sample has no observations");
  if (times.size() != events.size())
    throw error(errc::invalid_parameter, "time and event columns differ in length");
  survival_sample s;
  s.times.assign(times.begin(), times.end());
  s.events.reserve(events.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]))
      throw error(errc::nan_or_infinite, "observed time is not finite at row " + std::to_string(i));
    if (times[i] < 0.0)
      throw error(errc::negative_time, "observed time is negative at row " + std::to_string(i));
    if (events[i] != 0 && events[i] != 1)
      throw error(errc::non_binary_event, "event indicator is not 0/1 at row " + std::to_string(i));
    s.events.push_back(static_cast<std::uint8_t>(events[i]));
  }
  return s;
}

// A sample sorted ascending by time, events placed before censorings at tied
// times.  original_index maps each sorted slot back to the input row.
struct ordered_sample {
  std::vector<double> times;
  std::vector<std::uint8_t> events;
  std::vector<std::size_t> original_index;

  std::size_t size() const noexcept { return times.size(); }
};

inline ordered_sample order_with_censoring(const survival_sample& s) {
  ordered_sample out;
  const std::size_t n = s.size();
  out.original_index.resize(n);
  std::iota(out.original_index.begin(), out.original_index.end(), std::size_t{0});
  std::stable_sort(out.original_index.begin(), out.original_index.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (s.times[a] != s.times[b]) return s.times[a] < s.times[b];
                     return s.events[a] > s.events[b];  // events first at ties
                   });
  out.times.resize(n);
  out.events.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.times[i] = s.times[out.original_index[i]];
    out.events[i] = s.events[out.original_index[i]];
  }
  return out;
}

// Two samples to be compared.
struct two_sample_data {
  survival_sample group0;
  survival_sample group1;
};

// The two samples pooled and sorted once (same tie rule as
// order_with_censoring).  label[i] gives the group of pooled slot i under the
// *observed* assignment; permutation procedures rearrange a copy of it.
// Restricting any label vector to one group visits that group's observations
// in their own event-first sorted order, so per-slot group positions can be
// derived with a single pass.
struct pooled_layout {
  std::vector<double> times;
  std::vector<std::uint8_t> events;
  std::vector<std::uint8_t> labels;
  std::size_t n0 = 0;
  std::size_t n1 = 0;

  std::size_t size() const noexcept { return times.size(); }
};

inline pooled_layout pool_samples(const two_sample_data& data) {
  if (data.group0.size() == 0 || data.group1.size() == 0)
    throw error(errc::empty_sample, "both groups need at least one observation");
  pooled_layout pooled;
  pooled.n0 = data.group0.size();
  pooled.n1 = data.group1.size();
  const std::size_t n = pooled.n0 + pooled.n1;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto time_at = [&](std::size_t i) {
    return i < pooled.n0 ? data.group0.times[i] : data.group1.times[i - pooled.n0];
  };
  auto event_at = [&](std::size_t i) {
    return i < pooled.n0 ? data.group0.events[i] : data.group1.events[i - pooled.n0];
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (time_at(a) != time_at(b)) return time_at(a) < time_at(b);
    return event_at(a) > event_at(b);
  });
  pooled.times.resize(n);
  pooled.events.resize(n);
  pooled.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    pooled.times[i] = time_at(order[i]);
    pooled.events[i] = event_at(order[i]);
    pooled.labels[i] = order[i] < pooled.n0 ? 0 : 1;
  }
  return pooled;
}

}  // namespace survdiff
