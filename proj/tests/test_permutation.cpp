#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "survdiff/permutation.hpp"
#include "survdiff/statistics.hpp"

#include "test_helpers.hpp"

using namespace survdiff;

namespace {

two_sample_data make_data(std::vector<double> t0, std::vector<int> e0, std::vector<double> t1,
                          std::vector<int> e1) {
  two_sample_data d;
  d.group0 = validate(t0, e0);
  d.group1 = validate(t1, e1);
  return d;
}

weighted_pair_statistic energy_v() {
  return weighted_pair_statistic("energy-v", statistic_family{semimetric_spec{1.0}},
                                 statistic_form::v, weight_mode::km);
}

weighted_pair_statistic energy_u() {
  return weighted_pair_statistic("energy-u", statistic_family{semimetric_spec{1.0}},
                                 statistic_form::u_normalized, weight_mode::km);
}

}  // namespace

TEST_CASE("label shuffles preserve counts and hit all arrangements uniformly") {
  std::mt19937_64 engine(9001);
  std::map<unsigned, long> hits;
  const long reps = 60000;
  for (long r = 0; r < reps; ++r) {
    std::vector<std::uint8_t> labels{0, 0, 1, 1};
    permute_labels(labels, engine);
    unsigned ones = 0, code = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      ones += labels[i];
      code |= static_cast<unsigned>(labels[i]) << i;
    }
    REQUIRE(ones == 2);
    ++hits[code];
  }
  REQUIRE(hits.size() == 6);
  const double expected = static_cast<double>(reps) / 6.0;
  double chisq = 0.0;
  for (const auto& [code, count] : hits) {
    const double d = static_cast<double>(count) - expected;
    chisq += d * d / expected;
  }
  // chi-square with 5 degrees of freedom, far tail at the 0.001 level
  CHECK(chisq < 20.515);
}

TEST_CASE("exact enumeration on a four-subject sample") {
  const two_sample_data data = make_data({1.0, 2.0}, {1, 1}, {3.0, 4.0}, {1, 1});
  const pooled_layout pooled = pool_samples(data);
  weighted_pair_statistic stat = energy_v();
  permutation_plan plan;
  plan.seed = 42;
  const test_result res = run_permutation_test(stat, pooled, plan);
  CHECK(res.exact);
  CHECK(res.replications == 6);
  CHECK(res.degenerate == 0);
  CHECK(res.statistic == Catch::Approx(3.0).margin(1e-13));
  // splits {1,2}/{3,4} and {3,4}/{1,2} give 3, every mixed split gives 1
  CHECK(res.p_value == Catch::Approx(2.0 / 6.0).margin(1e-13));
  // sample-size scaling: 3 * (2*2)/4 = 3
  CHECK(res.scaled == Catch::Approx(3.0).margin(1e-13));
}

TEST_CASE("exactness can be disabled or priced out") {
  const two_sample_data data = make_data({1.0, 2.0}, {1, 1}, {3.0, 4.0}, {1, 1});
  const pooled_layout pooled = pool_samples(data);

  permutation_plan mc_plan;
  mc_plan.allow_exact = false;
  mc_plan.replications = 250;
  mc_plan.seed = 7;
  weighted_pair_statistic stat = energy_v();
  const test_result mc = run_permutation_test(stat, pooled, mc_plan);
  CHECK_FALSE(mc.exact);
  CHECK(mc.replications == 250);
  // add-one estimate: numerator counts the >= draws plus one
  CHECK(mc.p_value >= 1.0 / 251.0);
  CHECK(mc.p_value <= 1.0);

  permutation_plan tight;
  tight.exact_limit = 5;  // C(4,2) = 6 splits no longer qualify
  tight.replications = 100;
  weighted_pair_statistic stat2 = energy_v();
  const test_result priced_out = run_permutation_test(stat2, pooled, tight);
  CHECK_FALSE(priced_out.exact);
  CHECK(priced_out.replications == 100);
}

TEST_CASE("degenerate permuted splits are counted, not scored") {
  // five subjects, one censored at the top; any split placing the censored
  // subject in the two-slot group leaves it with a single event, which the
  // diagonal-excluded form cannot score
  const two_sample_data data =
      make_data({1.0, 2.0, 5.0}, {1, 1, 0}, {3.0, 4.0}, {1, 1});
  const pooled_layout pooled = pool_samples(data);
  weighted_pair_statistic stat = energy_u();
  permutation_plan plan;
  const test_result res = run_permutation_test(stat, pooled, plan);
  CHECK(res.exact);
  CHECK(res.replications == 10);  // C(5,3)
  CHECK(res.degenerate == 4);     // censored subject paired with one event
  CHECK(res.p_value >= 0.1);      // the identity split always counts
  CHECK(res.p_value <= 1.0);
}

TEST_CASE("a degenerate observed split propagates as an error") {
  const two_sample_data data =
      make_data({1.0, 2.0, 3.0}, {1, 1, 1}, {4.0, 5.0}, {1, 0});
  const pooled_layout pooled = pool_samples(data);
  weighted_pair_statistic stat = energy_u();
  permutation_plan plan;
  try {
    run_permutation_test(stat, pooled, plan);
    FAIL("expected degenerate-weights");
  } catch (const error& e) {
    CHECK(e.code() == errc::degenerate_weights);
  }
}

TEST_CASE("a plan without replications is rejected") {
  const two_sample_data data = make_data({1.0, 2.0}, {1, 1}, {3.0, 4.0}, {1, 1});
  const pooled_layout pooled = pool_samples(data);
  weighted_pair_statistic stat = energy_v();
  permutation_plan plan;
  plan.replications = 0;
  CHECK_THROWS_AS(run_permutation_test(stat, pooled, plan), error);
}

TEST_CASE("results are reproducible across runs and thread counts") {
  std::mt19937_64 engine(9002);
  two_sample_data data;
  data.group0 = testutil::random_sample_with_events(engine, 12, 3);
  data.group1 = testutil::random_sample_with_events(engine, 11, 3);
  const pooled_layout pooled = pool_samples(data);
  permutation_plan plan;
  plan.replications = 400;
  plan.allow_exact = false;
  plan.seed = 20260822;

  weighted_pair_statistic s1 = energy_v();
  const test_result base = run_permutation_test(s1, pooled, plan);

  weighted_pair_statistic s2 = energy_v();
  const test_result again = run_permutation_test(s2, pooled, plan);
  CHECK(base.statistic == again.statistic);
  CHECK(base.p_value == again.p_value);
  CHECK(base.degenerate == again.degenerate);

  setenv("SURVDIFF_THREADS", "4", 1);
  weighted_pair_statistic s3 = energy_v();
  const test_result threaded = run_permutation_test(s3, pooled, plan);
  setenv("SURVDIFF_THREADS", "1", 1);
  CHECK(base.statistic == threaded.statistic);
  CHECK(base.p_value == threaded.p_value);
  CHECK(base.degenerate == threaded.degenerate);

  // a different seed genuinely changes the draw stream
  permutation_plan other = plan;
  other.seed = plan.seed + 1;
  weighted_pair_statistic s4 = energy_v();
  const test_result moved = run_permutation_test(s4, pooled, other);
  CHECK(moved.statistic == base.statistic);
  CHECK(moved.p_value != base.p_value);  // 400 draws almost surely differ
}

TEST_CASE("null p-values are close to uniform") {
  std::mt19937_64 engine(9003);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int reps = 400;
  const std::int64_t R = 199;
  std::vector<double> pvalues;
  for (int rep = 0; rep < reps; ++rep) {
    two_sample_data data;
    for (int i = 0; i < 10; ++i) {
      data.group0.times.push_back(unif(engine));
      data.group0.events.push_back(1);
      data.group1.times.push_back(unif(engine));
      data.group1.events.push_back(1);
    }
    const pooled_layout pooled = pool_samples(data);
    weighted_pair_statistic stat = energy_u();
    permutation_plan plan;
    plan.replications = R;
    plan.seed = derive_seed(555, {static_cast<std::uint64_t>(rep)});
    pvalues.push_back(run_permutation_test(stat, pooled, plan).p_value);
  }
  std::sort(pvalues.begin(), pvalues.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < pvalues.size(); ++i) {
    const double upper = static_cast<double>(i + 1) / reps - pvalues[i];
    const double lower = pvalues[i] - static_cast<double>(i) / reps;
    ks = std::max(ks, std::max(upper, lower));
  }
  // far-tail distance for n = 400 plus the 1/(R+1) lattice resolution
  CHECK(ks < 1.9495 / std::sqrt(static_cast<double>(reps)) + 1.0 / 200.0);
  const pvalue_summary summary = null_pvalue_summary(pvalues, 0.05);
  CHECK(summary.mean > 0.44);
  CHECK(summary.mean < 0.56);
}

TEST_CASE("null p-value summaries at frozen values") {
  const std::vector<double> ps{0.04, 0.96};
  const pvalue_summary s = null_pvalue_summary(ps, 0.05);
  CHECK(s.mean == Catch::Approx(0.5).margin(1e-15));
  CHECK(s.sd == Catch::Approx(0.46 * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(s.rejection_rate == 0.5);

  CHECK_THROWS_AS(null_pvalue_summary(ps, 0.0), error);
  CHECK_THROWS_AS(null_pvalue_summary(ps, 1.0), error);
  CHECK_THROWS_AS(null_pvalue_summary(std::vector<double>{}, 0.05), error);
}

TEST_CASE("seed derivation separates paths and components") {
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
  CHECK(derive_seed(1, {2}) != derive_seed(1, {2, 0}));
  CHECK(derive_seed(5, {7, 9}) == derive_seed(5, {7, 9}));
  // splitmix64 reference values for a couple of inputs
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(splitmix64(1) == 0x910a2dec89025cc1ULL);
}
