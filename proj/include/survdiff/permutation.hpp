#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "survdiff/errors.hpp"
#include "survdiff/numeric.hpp"
#include "survdiff/rng.hpp"
#include "survdiff/sample.hpp"
#include "survdiff/statistics.hpp"
#include "survdiff/thread_pool.hpp"

namespace survdiff {

// In-place Fisher-Yates shuffle of a label vector.
template <class Engine>
inline void permute_labels(std::vector<std::uint8_t>& labels, Engine& engine) {
  for (std::size_t i = labels.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(labels[i - 1], labels[pick(engine)]);
  }
}

struct permutation_plan {
  std::int64_t replications = 1000;  // Monte Carlo permutations
  std::uint64_t seed = 0;            // stream seed for this single test
  bool allow_exact = true;           // enumerate all splits when cheap enough
  std::int64_t exact_limit = 20000;  // largest split count worth enumerating
};

struct test_result {
  std::string method;
  double statistic = 0.0;        // raw value on the observed labels
  double scaled = 0.0;           // statistic after sample-size scaling
  double p_value = 1.0;
  std::int64_t replications = 0; // permutations actually evaluated
  bool exact = false;            // full enumeration instead of Monte Carlo
  std::int64_t degenerate = 0;   // permuted splits yielding no statistic
  std::uint64_t seed = 0;
};

namespace detail {

// C(n, k) capped at `limit + 1` to avoid overflow while deciding whether
// exact enumeration is worthwhile.
inline std::int64_t binomial_capped(std::size_t n, std::size_t k, std::int64_t limit) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c *= static_cast<double>(n - k + i) / static_cast<double>(i);
    if (c > static_cast<double>(limit)) return limit + 1;
  }
  return static_cast<std::int64_t>(std::llround(c));
}

}  // namespace detail

// Calibrates a statistic by permuting group labels over the pooled sample.
// Monte Carlo mode draws `replications` independent shuffles, each from its
// own seed derived from (plan.seed, draw index), so the result does not
// depend on evaluation order or thread count, and reports the add-one
// estimate p = (1 + #{theta_r >= theta_obs}) / (1 + R).  When the total
// number of distinct splits C(n, n0) is at most plan.exact_limit (and
// allow_exact is set), every split is enumerated instead and p is the exact
// proportion #{theta_r >= theta_obs} / C, the identity split included.
// Splits on which the statistic is degenerate count toward the denominator
// but never toward the exceedance count, and are reported in `degenerate`;
// a degenerate statistic on the observed labels propagates as an error.
inline test_result run_permutation_test(two_sample_statistic& stat, const pooled_layout& pooled,
                                        const permutation_plan& plan) {
  if (plan.replications < 1)
    throw error(errc::invalid_parameter, "permutation test needs at least one replication");
  stat.bind(pooled);
  test_result result;
  result.method = stat.name();
  result.seed = plan.seed;
  result.statistic = stat.evaluate(pooled.labels);
  result.scaled = stat.uses_sample_size_scaling()
                      ? t_scale(result.statistic, pooled.n0, pooled.n1)
                      : result.statistic;

  const std::int64_t splits =
      detail::binomial_capped(pooled.size(), pooled.n0, plan.exact_limit);
  const bool exact = plan.allow_exact && splits <= plan.exact_limit;
  const std::int64_t total = exact ? splits : plan.replications;
  std::vector<double> draws(static_cast<std::size_t>(total),
                            -std::numeric_limits<double>::infinity());

  if (exact) {
    // March through all C(n, n0) placements of the group-0 labels.
    std::vector<std::size_t> pos(pooled.n0);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    std::vector<std::uint8_t> labels(pooled.size());
    const std::size_t n = pooled.size(), k = pooled.n0;
    std::size_t r = 0;
    for (;;) {
      std::fill(labels.begin(), labels.end(), std::uint8_t{1});
      for (std::size_t p : pos) labels[p] = 0;
      try {
        draws[r] = stat.evaluate(labels);
      } catch (const error& e) {
        if (!is_degenerate_error(e.code())) throw;
      }
      ++r;
      // next combination
      std::size_t i = k;
      while (i > 0 && pos[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pos[i - 1];
      for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
  } else {
    parallel_for(static_cast<std::size_t>(total), [&](std::size_t r) {
      thread_local std::vector<std::uint8_t> labels;
      labels.assign(pooled.labels.begin(), pooled.labels.end());
      std::mt19937_64 engine =
          make_engine(derive_seed(plan.seed, {static_cast<std::uint64_t>(r) + 1}));
      permute_labels(labels, engine);
      try {
        draws[r] = stat.evaluate(labels);
      } catch (const error& e) {
        if (!is_degenerate_error(e.code())) throw;
      }
    });
  }

  std::int64_t exceed = 0, degenerate = 0;
  for (double d : draws) {
    if (d == -std::numeric_limits<double>::infinity())
      ++degenerate;
    else if (d >= result.statistic)
      ++exceed;
  }
  result.replications = total;
  result.exact = exact;
  result.degenerate = degenerate;
  result.p_value = exact ? static_cast<double>(exceed) / static_cast<double>(total)
                         : (1.0 + static_cast<double>(exceed)) / (1.0 + static_cast<double>(total));
  return result;
}

// Aggregate view of a collection of null p-values.
struct pvalue_summary {
  double mean = 0.0;
  double sd = 0.0;
  double rejection_rate = 0.0;
};

inline pvalue_summary null_pvalue_summary(std::span<const double> pvalues, double alpha) {
  if (pvalues.empty()) throw error(errc::empty_sample, "null_pvalue_summary: no p-values");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw error(errc::invalid_parameter, "null_pvalue_summary: alpha must lie in (0, 1)");
  const mean_sd ms = mean_and_sd(pvalues);
  std::size_t rejected = 0;
  for (double p : pvalues)
    if (p <= alpha) ++rejected;
  return {ms.mean, ms.sd, static_cast<double>(rejected) / static_cast<double>(pvalues.size())};
}

}  // namespace survdiff
