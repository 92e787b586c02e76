#pragma once

// Shared helpers for the unit tests: random censored datasets with ties and
// conversions between library samples and the oracle's representation.

#include <cstdint>
#include <random>
#include <vector>

#include "survdiff/sample.hpp"

#include "oracle.hpp"

namespace testutil {

// Random censored sample of size n.  Times are drawn from a small lattice
// (multiples of 1/4) with probability `tie_bias`, otherwise continuous, so
// tied times and tied event/censoring mixes occur regularly.
inline survdiff::survival_sample random_sample(std::mt19937_64& engine, std::size_t n,
                                               double censor_prob = 0.3,
                                               double tie_bias = 0.5) {
  std::vector<double> times;
  std::vector<int> events;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> lattice(1, 8);
  for (std::size_t i = 0; i < n; ++i) {
    const bool on_lattice = unit(engine) < tie_bias;
    times.push_back(on_lattice ? lattice(engine) / 4.0 : unit(engine) * 3.0 + 0.01);
    events.push_back(unit(engine) < censor_prob ? 0 : 1);
  }
  return survdiff::validate(times, events);
}

// A sample guaranteed to contain at least `min_events` events.
inline survdiff::survival_sample random_sample_with_events(std::mt19937_64& engine, std::size_t n,
                                                           std::size_t min_events,
                                                           double censor_prob = 0.3,
                                                           double tie_bias = 0.5) {
  for (;;) {
    survdiff::survival_sample s = random_sample(engine, n, censor_prob, tie_bias);
    std::size_t events = 0;
    for (auto e : s.events) events += e;
    if (events >= min_events) return s;
  }
}

inline oracle::sample to_oracle(const survdiff::survival_sample& s) {
  oracle::sample out;
  for (std::size_t i = 0; i < s.size(); ++i)
    out.push_back({s.times[i], static_cast<int>(s.events[i])});
  return out;
}

}  // namespace testutil
