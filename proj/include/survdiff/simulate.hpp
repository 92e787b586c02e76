#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "survdiff/errors.hpp"
#include "survdiff/methods.hpp"
#include "survdiff/permutation.hpp"
#include "survdiff/rng.hpp"
#include "survdiff/sample.hpp"
#include "survdiff/thread_pool.hpp"

namespace survdiff {

// ---------------------------------------------------------------------------
// Lifetime models
// ---------------------------------------------------------------------------

struct exponential_lifetime {
  double rate = 1.0;
};
struct gamma_lifetime {
  double shape = 1.0;
  double rate = 1.0;  // shape-rate convention: mean = shape / rate
};
struct lognormal_lifetime {
  double mu = 0.0;
  double sigma = 1.0;  // log-scale standard deviation
};

// Hazard that is affine on consecutive segments: on [start[k], start[k+1])
// (the last segment ending at `horizon`) the hazard is a[k] + b[k]*(t -
// start[k]).  The cumulative hazard is piecewise quadratic and is inverted
// segment by segment in closed form.  A subject whose unit-exponential draw
// exceeds the total cumulative hazard at the horizon never fails (an
// infinite lifetime, i.e. a cured subject).
struct piecewise_hazard_lifetime {
  std::vector<double> start;
  std::vector<double> a;
  std::vector<double> b;
  double horizon = 0.0;
};

using lifetime_model =
    std::variant<exponential_lifetime, gamma_lifetime, lognormal_lifetime,
                 piecewise_hazard_lifetime>;

inline void check(const piecewise_hazard_lifetime& m) {
  if (m.start.empty() || m.start.size() != m.a.size() || m.start.size() != m.b.size())
    throw error(errc::invalid_parameter, "piecewise hazard: inconsistent segment arrays");
  if (m.start.front() != 0.0)
    throw error(errc::invalid_parameter, "piecewise hazard: first segment must start at 0");
  if (!(m.horizon > m.start.back()))
    throw error(errc::invalid_parameter, "piecewise hazard: horizon before last segment");
  for (std::size_t k = 0; k < m.start.size(); ++k) {
    const double end = k + 1 < m.start.size() ? m.start[k + 1] : m.horizon;
    if (!(end > m.start[k]))
      throw error(errc::invalid_parameter, "piecewise hazard: segments must be increasing");
    const double at_start = m.a[k];
    const double at_end = m.a[k] + m.b[k] * (end - m.start[k]);
    if (at_start < 0.0 || at_end < 0.0)
      throw error(errc::invalid_parameter, "piecewise hazard: negative hazard on a segment");
  }
}

inline void check(const lifetime_model& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, exponential_lifetime>) {
          if (!(m.rate > 0.0)) throw error(errc::invalid_parameter, "exponential rate must be > 0");
        } else if constexpr (std::is_same_v<T, gamma_lifetime>) {
          if (!(m.shape > 0.0) || !(m.rate > 0.0))
            throw error(errc::invalid_parameter, "gamma shape and rate must be > 0");
        } else if constexpr (std::is_same_v<T, lognormal_lifetime>) {
          if (!(m.sigma > 0.0))
            throw error(errc::invalid_parameter, "lognormal sigma must be > 0");
        } else {
          check(m);
        }
      },
      model);
}

// Cumulative hazard of a piecewise-affine model (constant past the horizon).
inline double cumulative_hazard(const piecewise_hazard_lifetime& m, double t) {
  double acc = 0.0;
  for (std::size_t k = 0; k < m.start.size(); ++k) {
    const double seg_end = k + 1 < m.start.size() ? m.start[k + 1] : m.horizon;
    const double upper = std::min(t, seg_end);
    if (upper <= m.start[k]) break;
    const double u = upper - m.start[k];
    acc += m.a[k] * u + 0.5 * m.b[k] * u * u;
  }
  return acc;
}

namespace detail {

// First u >= 0 with a*u + (b/2)*u^2 = rem, assuming the target is reachable
// within the segment.  The rationalized quadratic root is stable for small b
// and reduces to rem/a when b = 0.
inline double invert_segment(double a, double b, double rem) {
  if (rem <= 0.0) return 0.0;
  const double disc = std::max(a * a + 2.0 * b * rem, 0.0);
  const double den = a + std::sqrt(disc);
  return den > 0.0 ? 2.0 * rem / den : 0.0;
}

}  // namespace detail

template <class Engine>
inline double sample_lifetime(const lifetime_model& model, Engine& engine) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, exponential_lifetime>) {
          return std::exponential_distribution<double>(m.rate)(engine);
        } else if constexpr (std::is_same_v<T, gamma_lifetime>) {
          return std::gamma_distribution<double>(m.shape, 1.0 / m.rate)(engine);
        } else if constexpr (std::is_same_v<T, lognormal_lifetime>) {
          return std::lognormal_distribution<double>(m.mu, m.sigma)(engine);
        } else {
          const double target = std::exponential_distribution<double>(1.0)(engine);
          double acc = 0.0;
          for (std::size_t k = 0; k < m.start.size(); ++k) {
            const double seg_end = k + 1 < m.start.size() ? m.start[k + 1] : m.horizon;
            const double len = seg_end - m.start[k];
            const double seg_gain = m.a[k] * len + 0.5 * m.b[k] * len * len;
            if (acc + seg_gain >= target)
              return m.start[k] + detail::invert_segment(m.a[k], m.b[k], target - acc);
            acc += seg_gain;
          }
          return std::numeric_limits<double>::infinity();  // cured
        }
      },
      model);
}

// ---------------------------------------------------------------------------
// Censoring models
// ---------------------------------------------------------------------------

struct no_censoring {};
struct exponential_censoring {
  double rate = 1.0;
};
struct uniform_censoring {
  double upper = 1.0;  // C ~ Uniform(0, upper)
};
// Placeholder resolved before sampling: exponential censoring whose rate is
// calibrated so that P(C < T) equals `target` under the group-0 lifetime law.
struct target_rate_censoring {
  double target = 0.1;
};

using censoring_model =
    std::variant<no_censoring, exponential_censoring, uniform_censoring, target_rate_censoring>;

inline void check(const censoring_model& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, exponential_censoring>) {
          if (!(m.rate > 0.0)) throw error(errc::invalid_parameter, "censoring rate must be > 0");
        } else if constexpr (std::is_same_v<T, uniform_censoring>) {
          if (!(m.upper > 0.0))
            throw error(errc::invalid_parameter, "uniform censoring bound must be > 0");
        } else if constexpr (std::is_same_v<T, target_rate_censoring>) {
          if (!(m.target > 0.0) || !(m.target < 1.0))
            throw error(errc::invalid_parameter, "target censoring rate must lie in (0, 1)");
        }
      },
      model);
}

template <class Engine>
inline double sample_censoring(const censoring_model& model, Engine& engine) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, no_censoring>) {
          return std::numeric_limits<double>::infinity();
        } else if constexpr (std::is_same_v<T, exponential_censoring>) {
          return std::exponential_distribution<double>(m.rate)(engine);
        } else if constexpr (std::is_same_v<T, uniform_censoring>) {
          return std::uniform_real_distribution<double>(0.0, m.upper)(engine);
        } else {
          throw error(errc::invalid_parameter,
                      "target-rate censoring must be calibrated before sampling");
        }
      },
      model);
}

// Observed pair (X, delta) = (min(T, C), 1{T <= C}).
struct observed {
  double time = 0.0;
  std::uint8_t event = 0;
};

inline observed apply_censoring(double lifetime, double censoring) {
  if (std::isnan(lifetime) || std::isnan(censoring))
    throw error(errc::nan_or_infinite, "apply_censoring: NaN input");
  const double x = std::min(lifetime, censoring);
  if (!std::isfinite(x))
    throw error(errc::nan_or_infinite, "apply_censoring: subject neither fails nor is censored");
  return {x, static_cast<std::uint8_t>(lifetime <= censoring ? 1 : 0)};
}

// ---------------------------------------------------------------------------
// Censoring-rate calibration
// ---------------------------------------------------------------------------

namespace detail {

// E[exp(-c T) ; T finite] by composite Simpson where no closed form exists.
inline double laplace_lognormal(const lognormal_lifetime& m, double c) {
  // Integrate over the standard normal z with T = exp(mu + sigma z).
  const int half = 2000;
  const double lo = -10.0, hi = 10.0;
  const double step = (hi - lo) / (2 * half);
  double acc = 0.0;
  const double inv_sqrt2pi = 0.3989422804014326779;
  auto f = [&](double z) {
    return inv_sqrt2pi * std::exp(-0.5 * z * z - c * std::exp(m.mu + m.sigma * z));
  };
  for (int i = 0; i <= 2 * half; ++i) {
    const double z = lo + step * i;
    const double w = (i == 0 || i == 2 * half) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * f(z);
  }
  return acc * step / 3.0;
}

inline double laplace_piecewise(const piecewise_hazard_lifetime& m, double c) {
  // Density is hazard(t) * exp(-Lambda(t)) up to the horizon; the cured mass
  // beyond it contributes nothing to E[exp(-cT); T finite].
  double acc = 0.0;
  for (std::size_t k = 0; k < m.start.size(); ++k) {
    const double seg_end = k + 1 < m.start.size() ? m.start[k + 1] : m.horizon;
    const double base = m.start[k];
    const double len = seg_end - base;
    if (m.a[k] == 0.0 && m.b[k] == 0.0) continue;  // zero hazard, zero density
    const int half = 1000;
    const double step = len / (2 * half);
    const double lam0 = cumulative_hazard(m, base);
    double seg = 0.0;
    for (int i = 0; i <= 2 * half; ++i) {
      const double u = step * i;
      const double t = base + u;
      const double hazard = m.a[k] + m.b[k] * u;
      const double lam = lam0 + m.a[k] * u + 0.5 * m.b[k] * u * u;
      const double w = (i == 0 || i == 2 * half) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      seg += w * hazard * std::exp(-lam - c * t);
    }
    acc += seg * step / 3.0;
  }
  return acc;
}

inline double censoring_probability(const lifetime_model& model, double c) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, exponential_lifetime>) {
          return c / (m.rate + c);
        } else if constexpr (std::is_same_v<T, gamma_lifetime>) {
          return 1.0 - std::pow(m.rate / (m.rate + c), m.shape);
        } else if constexpr (std::is_same_v<T, lognormal_lifetime>) {
          return 1.0 - laplace_lognormal(m, c);
        } else {
          return 1.0 - laplace_piecewise(m, c);
        }
      },
      model);
}

}  // namespace detail

// Rate c of an exponential censoring law C ~ Exp(c) such that P(C < T) equals
// `target` when T follows `model`.  Exponential and gamma lifetimes solve in
// closed form; the rest bracket and bisect the (monotone) censoring
// probability computed by quadrature.
inline double calibrate_censoring_rate(const lifetime_model& model, double target) {
  check(model);
  if (!(target > 0.0) || !(target < 1.0))
    throw error(errc::invalid_parameter, "target censoring rate must lie in (0, 1)");
  if (const auto* e = std::get_if<exponential_lifetime>(&model))
    return target * e->rate / (1.0 - target);
  if (const auto* g = std::get_if<gamma_lifetime>(&model))
    return g->rate * (std::pow(1.0 - target, -1.0 / g->shape) - 1.0);

  // Unreachable targets: as c -> 0 the censoring probability tends to the
  // cured mass, so targets at or below it admit no solution.
  const double floor = detail::censoring_probability(model, 0.0);
  if (target <= floor + 1e-12)
    throw error(errc::no_convergence,
                "target censoring rate is not attainable for this lifetime model");
  double hi = 1.0;
  int guard = 0;
  while (detail::censoring_probability(model, hi) < target) {
    hi *= 2.0;
    if (++guard > 200)
      throw error(errc::no_convergence, "censoring calibration failed to bracket the target");
  }
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (detail::censoring_probability(model, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Replaces target-rate censoring by its calibrated exponential law.
inline censoring_model resolve_censoring(const censoring_model& censoring,
                                         const lifetime_model& baseline) {
  if (const auto* t = std::get_if<target_rate_censoring>(&censoring)) {
    check(censoring);
    return exponential_censoring{calibrate_censoring_rate(baseline, t->target)};
  }
  check(censoring);
  return censoring;
}

// ---------------------------------------------------------------------------
// Studies
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t default_study_seed = 8675309ULL;

struct scenario_config {
  std::size_t n0 = 0, n1 = 0;
  lifetime_model lifetime0 = exponential_lifetime{1.0};
  lifetime_model lifetime1 = exponential_lifetime{1.0};
  censoring_model censoring0 = no_censoring{};
  censoring_model censoring1 = no_censoring{};
  std::vector<std::string> methods;
  std::int64_t replications = 500;   // simulated datasets
  std::int64_t permutations = 1000;  // label permutations per test
  double alpha = 0.05;
  std::uint64_t seed = default_study_seed;
};

inline void check(const scenario_config& cfg) {
  if (cfg.n0 < 2 || cfg.n1 < 2)
    throw error(errc::invalid_parameter, "study groups need at least two subjects each");
  if (cfg.methods.empty()) throw error(errc::invalid_parameter, "study has no methods");
  if (cfg.replications < 1) throw error(errc::invalid_parameter, "study needs replications >= 1");
  if (cfg.permutations < 1) throw error(errc::invalid_parameter, "study needs permutations >= 1");
  if (!(cfg.alpha > 0.0) || !(cfg.alpha < 1.0))
    throw error(errc::invalid_parameter, "study alpha must lie in (0, 1)");
  check(cfg.lifetime0);
  check(cfg.lifetime1);
  check(cfg.censoring0);
  check(cfg.censoring1);
}

// Simulates one dataset of the scenario (group sizes, lifetime and censoring
// laws); the caller provides the engine, typically seeded per replication.
template <class Engine>
inline two_sample_data simulate_dataset(const scenario_config& cfg,
                                        const censoring_model& resolved0,
                                        const censoring_model& resolved1, Engine& engine) {
  two_sample_data data;
  auto fill = [&](survival_sample& sample, std::size_t n, const lifetime_model& life,
                  const censoring_model& cens) {
    sample.times.reserve(n);
    sample.events.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = sample_lifetime(life, engine);
      const double c = sample_censoring(cens, engine);
      const observed obs = apply_censoring(t, c);
      sample.times.push_back(obs.time);
      sample.events.push_back(obs.event);
    }
  };
  fill(data.group0, cfg.n0, cfg.lifetime0, resolved0);
  fill(data.group1, cfg.n1, cfg.lifetime1, resolved1);
  return data;
}

struct method_summary {
  std::string method;
  double rejection_rate = 0.0;
  double mean_p = 0.0;
  double sd_p = 0.0;
  std::int64_t degenerate = 0;  // replications with no usable p-value
};

struct study_result {
  std::vector<std::string> methods;  // canonical names, column order
  std::int64_t replications = 0;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  // Row-major [replication][method]; NaN marks a degenerate cell.
  std::vector<double> pvalues;
  std::vector<method_summary> summaries;

  double p_at(std::int64_t rep, std::size_t method) const {
    return pvalues[static_cast<std::size_t>(rep) * methods.size() + method];
  }
};

// Runs the full scenario: per replication, draws a dataset and calibrates
// every method on it by permutation.  Seeds are derived per (replication)
// for the data and per (replication, method) for the permutation stream, so
// reruns with the same seed are identical regardless of thread count.
inline study_result run_study(const scenario_config& cfg) {
  check(cfg);
  study_result result;
  for (const std::string& m : cfg.methods)
    result.methods.push_back(canonical_method_name(m));
  result.replications = cfg.replications;
  result.seed = cfg.seed;
  result.alpha = cfg.alpha;
  const std::size_t n_methods = result.methods.size();
  result.pvalues.assign(static_cast<std::size_t>(cfg.replications) * n_methods,
                        std::numeric_limits<double>::quiet_NaN());

  const censoring_model resolved0 = resolve_censoring(cfg.censoring0, cfg.lifetime0);
  const censoring_model resolved1 = resolve_censoring(cfg.censoring1, cfg.lifetime0);

  parallel_for(static_cast<std::size_t>(cfg.replications), [&](std::size_t rep) {
    std::mt19937_64 data_engine =
        make_engine(derive_seed(cfg.seed, {1, static_cast<std::uint64_t>(rep)}));
    const two_sample_data data = simulate_dataset(cfg, resolved0, resolved1, data_engine);
    const pooled_layout pooled = pool_samples(data);
    for (std::size_t m = 0; m < n_methods; ++m) {
      const std::unique_ptr<two_sample_statistic> stat = make_method(result.methods[m]);
      permutation_plan plan;
      plan.replications = cfg.permutations;
      plan.seed = derive_seed(cfg.seed, {2, static_cast<std::uint64_t>(rep),
                                         static_cast<std::uint64_t>(m)});
      try {
        const test_result test = run_permutation_test(*stat, pooled, plan);
        result.pvalues[rep * n_methods + m] = test.p_value;
      } catch (const error& e) {
        if (!is_degenerate_error(e.code())) throw;
        // leave the cell NaN
      }
    }
  });

  for (std::size_t m = 0; m < n_methods; ++m) {
    method_summary summary;
    summary.method = result.methods[m];
    std::vector<double> valid;
    valid.reserve(static_cast<std::size_t>(cfg.replications));
    for (std::int64_t rep = 0; rep < cfg.replications; ++rep) {
      const double p = result.p_at(rep, m);
      if (std::isnan(p))
        ++summary.degenerate;
      else
        valid.push_back(p);
    }
    if (valid.empty()) {
      summary.rejection_rate = std::numeric_limits<double>::quiet_NaN();
      summary.mean_p = std::numeric_limits<double>::quiet_NaN();
      summary.sd_p = std::numeric_limits<double>::quiet_NaN();
    } else {
      const pvalue_summary ps = null_pvalue_summary(valid, cfg.alpha);
      summary.rejection_rate = ps.rejection_rate;
      summary.mean_p = ps.mean;
      summary.sd_p = ps.sd;
    }
    result.summaries.push_back(std::move(summary));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Built-in scenarios
// ---------------------------------------------------------------------------

struct named_scenario {
  std::string name;
  std::string description;
  scenario_config config;
};

namespace detail {

inline piecewise_hazard_lifetime constant_hazard(double level, double horizon) {
  piecewise_hazard_lifetime m;
  m.start = {0.0};
  m.a = {level};
  m.b = {0.0};
  m.horizon = horizon;
  return m;
}

inline scenario_config base_config(std::size_t n) {
  scenario_config cfg;
  cfg.n0 = cfg.n1 = n;
  cfg.methods = study_roster();
  cfg.replications = 500;
  cfg.permutations = 1000;
  cfg.alpha = 0.05;
  return cfg;
}

}  // namespace detail

// Every published experiment, by name:
//   null-<dist>-n<k>-c<rate>  — identical margins, calibrated censoring
//       dist in {exp1, exp1.5, gamma1-1, gamma1.5-1.5, lognorm0-0.5,
//       lognorm0-0.25}, k in {20, 50}, rate in {10, 30} percent
//   ph-theta<v>-n<k>          — Exp(1) vs Exp(v) proportional hazards,
//       v in {1.1, ..., 2}, k in {20, 50, 100}
//   cure-n<k>, multimodal-n<k>, delayed-n<k> (k in {20, 50, 100}) and the
//       bare aliases cure/multimodal/delayed for n = 100
inline std::vector<named_scenario> builtin_scenarios() {
  using detail::base_config;
  std::vector<named_scenario> all;

  struct null_dist {
    const char* token;
    const char* label;
    lifetime_model model;
  };
  const null_dist dists[] = {
      {"exp1", "Exp(1)", exponential_lifetime{1.0}},
      {"exp1.5", "Exp(1.5)", exponential_lifetime{1.5}},
      {"gamma1-1", "Gamma(1,1)", gamma_lifetime{1.0, 1.0}},
      {"gamma1.5-1.5", "Gamma(1.5,1.5)", gamma_lifetime{1.5, 1.5}},
      {"lognorm0-0.5", "LogNormal(0,0.5)", lognormal_lifetime{0.0, 0.5}},
      {"lognorm0-0.25", "LogNormal(0,0.25)", lognormal_lifetime{0.0, 0.25}},
  };
  for (const null_dist& dist : dists) {
    for (std::size_t n : {std::size_t{20}, std::size_t{50}}) {
      for (int pct : {10, 30}) {
        scenario_config cfg = base_config(n);
        cfg.lifetime0 = cfg.lifetime1 = dist.model;
        cfg.censoring0 = cfg.censoring1 = target_rate_censoring{pct / 100.0};
        named_scenario s;
        s.name = std::string("null-") + dist.token + "-n" + std::to_string(n) + "-c" +
                 std::to_string(pct);
        s.description = std::string("Null calibration: ") + dist.label + " vs itself, n=" +
                        std::to_string(n) + " per group, " + std::to_string(pct) +
                        "% censoring";
        s.config = cfg;
        all.push_back(std::move(s));
      }
    }
  }

  const double thetas[] = {1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
  for (double theta : thetas) {
    for (std::size_t n : {std::size_t{20}, std::size_t{50}, std::size_t{100}}) {
      scenario_config cfg = base_config(n);
      cfg.lifetime0 = exponential_lifetime{1.0};
      cfg.lifetime1 = exponential_lifetime{theta};
      cfg.censoring0 = cfg.censoring1 = exponential_censoring{1.0 / 9.0};
      named_scenario s;
      s.name = "ph-theta" + detail::format_number(theta) + "-n" + std::to_string(n);
      s.description = "Proportional hazards: Exp(1) vs Exp(" + detail::format_number(theta) +
                      "), n=" + std::to_string(n) + " per group, Exp(1/9) censoring";
      s.config = cfg;
      all.push_back(std::move(s));
    }
  }

  // Cure: control hazard 0.5; treatment hazard 0.5 - 0.1 t until it hits 0
  // at t = 5, then 0 forever (a cured fraction of exp(-1.25)).
  piecewise_hazard_lifetime cure1;
  cure1.start = {0.0, 5.0};
  cure1.a = {0.5, 0.0};
  cure1.b = {-0.1, 0.0};
  cure1.horizon = 100.0;

  // Multimodality: treatment hazard alternates between rising ramps
  // 0.2 + 0.1 (t - start) and plateaus at 0.5.
  piecewise_hazard_lifetime multi1;
  multi1.start = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
  multi1.a = {0.2, 0.5, 0.2, 0.5, 0.2, 0.5};
  multi1.b = {0.1, 0.0, 0.1, 0.0, 0.1, 0.0};
  multi1.horizon = 100.0;

  // Delayed effect: treatment hazard 0.6 - 0.1 t falling to 0.1 at t = 5 and
  // staying there.
  piecewise_hazard_lifetime delayed1;
  delayed1.start = {0.0, 5.0};
  delayed1.a = {0.6, 0.1};
  delayed1.b = {-0.1, 0.0};
  delayed1.horizon = 100.0;

  struct shape_case {
    const char* token;
    const char* label;
    double control_level;
    piecewise_hazard_lifetime treatment;
    double censor_upper;
  };
  const shape_case shapes[] = {
      {"cure", "Cure fraction", 0.5, cure1, 10.0},
      {"multimodal", "Multimodal lifetimes", 0.45, multi1, 10.0},
      {"delayed", "Delayed treatment effect", 0.4, delayed1, 15.0},
  };
  for (const shape_case& shape : shapes) {
    for (std::size_t n : {std::size_t{20}, std::size_t{50}, std::size_t{100}}) {
      scenario_config cfg = base_config(n);
      cfg.lifetime0 = detail::constant_hazard(shape.control_level, 100.0);
      cfg.lifetime1 = shape.treatment;
      cfg.censoring0 = cfg.censoring1 = uniform_censoring{shape.censor_upper};
      named_scenario s;
      s.name = std::string(shape.token) + "-n" + std::to_string(n);
      s.description = std::string(shape.label) + ", n=" + std::to_string(n) +
                      " per group, Uniform(0," + detail::format_number(shape.censor_upper) +
                      ") censoring";
      s.config = cfg;
      all.push_back(std::move(s));
      if (n == 100) {
        named_scenario alias = all.back();
        alias.name = shape.token;
        all.push_back(std::move(alias));
      }
    }
  }
  return all;
}

inline const named_scenario& find_builtin_scenario(const std::string& name) {
  static const std::vector<named_scenario> all = builtin_scenarios();
  for (const named_scenario& s : all)
    if (s.name == name) return s;
  throw error(errc::unknown_scenario, "unknown builtin scenario: " + name);
}

}  // namespace survdiff
