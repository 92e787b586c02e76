#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "survdiff/errors.hpp"
#include "survdiff/km.hpp"
#include "survdiff/numeric.hpp"
#include "survdiff/sample.hpp"
#include "survdiff/statistics.hpp"

namespace survdiff {

// ---------------------------------------------------------------------------
// Weighted log-rank family
// ---------------------------------------------------------------------------

// One pooled event time with true at-risk and event counts per group.
struct risk_row {
  double time = 0.0;
  double d0 = 0.0, d1 = 0.0, d = 0.0;
  double y0 = 0.0, y1 = 0.0, y = 0.0;
};

struct risk_table {
  std::vector<risk_row> rows;
};

inline risk_table build_risk_table(const two_sample_data& data) {
  const pooled_layout pooled = pool_samples(data);
  const std::size_t n = pooled.size();
  risk_table table;
  std::size_t y0 = pooled.n0, y1 = pooled.n1;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    risk_row row;
    row.time = pooled.times[i];
    std::size_t removed0 = 0, removed1 = 0;
    while (j < n && pooled.times[j] == pooled.times[i]) {
      if (pooled.labels[j] == 0) {
        ++removed0;
        if (pooled.events[j]) row.d0 += 1.0;
      } else {
        ++removed1;
        if (pooled.events[j]) row.d1 += 1.0;
      }
      ++j;
    }
    row.d = row.d0 + row.d1;
    row.y0 = static_cast<double>(y0);
    row.y1 = static_cast<double>(y1);
    row.y = static_cast<double>(y0 + y1);
    if (row.d > 0.0) table.rows.push_back(row);
    y0 -= removed0;
    y1 -= removed1;
    i = j;
  }
  if (table.rows.empty())
    throw error(errc::no_events, "risk table: no events in the pooled sample");
  return table;
}

enum class logrank_weight { logrank, gehan, tarone_ware, peto_peto, fleming_harrington };

struct weight_rule {
  logrank_weight kind = logrank_weight::logrank;
  double rho = 0.0;    // fleming_harrington only
  double gamma = 0.0;  // fleming_harrington only
};

inline void check(const weight_rule& rule) {
  if (rule.kind == logrank_weight::fleming_harrington) {
    if (!(rule.rho >= 0.0) || !(rule.gamma >= 0.0) || !std::isfinite(rule.rho) ||
        !std::isfinite(rule.gamma))
      throw error(errc::invalid_parameter, "fleming-harrington exponents must be >= 0");
  }
}

namespace detail {

// Weights for every row of a risk table.  The product-limit values needed by
// the Peto and Fleming-Harrington rules come from the pooled counts already
// held in the table: s_at is the pooled survival estimate at the row's time,
// s_before the value just before it.
inline std::vector<double> logrank_weights(const risk_table& table, const weight_rule& rule) {
  check(rule);
  std::vector<double> w(table.rows.size());
  double surv = 1.0;
  for (std::size_t j = 0; j < table.rows.size(); ++j) {
    const risk_row& row = table.rows[j];
    const double s_before = surv;
    surv *= 1.0 - row.d / row.y;
    const double s_at = surv;
    switch (rule.kind) {
      case logrank_weight::logrank:
        w[j] = 1.0;
        break;
      case logrank_weight::gehan:
        w[j] = row.y;
        break;
      case logrank_weight::tarone_ware:
        w[j] = std::sqrt(row.y);
        break;
      case logrank_weight::peto_peto:
        w[j] = s_at;
        break;
      case logrank_weight::fleming_harrington:
        w[j] = std::pow(s_before, rule.rho) * std::pow(1.0 - s_before, rule.gamma);
        break;
    }
  }
  return w;
}

}  // namespace detail

// Squared standardized weighted log-rank statistic
//   Z^2 = [sum_j w_j (d1_j - E_j)]^2 / sum_j w_j^2 V_j
// with the hypergeometric mean E_j = d_j Y1_j / Y_j and variance
//   V_j = d_j (Y1_j/Y_j)(1 - Y1_j/Y_j)(Y_j - d_j)/(Y_j - 1),
// the variance term taken as 0 when Y_j = 1.
inline double weighted_logrank(const risk_table& table, const weight_rule& rule) {
  if (table.rows.empty())
    throw error(errc::no_events, "weighted_logrank: empty risk table");
  const std::vector<double> w = detail::logrank_weights(table, rule);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < table.rows.size(); ++j) {
    const risk_row& row = table.rows[j];
    const double frac1 = row.y1 / row.y;
    num += w[j] * (row.d1 - row.d * frac1);
    if (row.y > 1.0)
      den += w[j] * w[j] * row.d * frac1 * (1.0 - frac1) * (row.y - row.d) / (row.y - 1.0);
  }
  if (!(den > 0.0))
    throw error(errc::zero_variance, "weighted_logrank: zero variance across event times");
  return num * num / den;
}

// Upper tail of the chi-square distribution with one degree of freedom;
// the asymptotic reference p-value for the log-rank family.
inline double chisq1_upper_tail(double x) {
  if (!(x >= 0.0)) throw error(errc::invalid_parameter, "chisq1_upper_tail: negative argument");
  return std::erfc(std::sqrt(0.5 * x));
}

// Permutation-facing evaluator.  bind() collapses the pooled sample into
// tied-time blocks and precomputes everything label-invariant (pooled event
// counts, at-risk totals, and the weight of every event time, which depends
// only on pooled quantities); evaluate() is then a single O(n) sweep.
class logrank_statistic final : public two_sample_statistic {
 public:
  logrank_statistic(std::string name, weight_rule rule) : name_(std::move(name)), rule_(rule) {
    check(rule_);
  }

  const std::string& name() const override { return name_; }

  void bind(const pooled_layout& pooled) override {
    n1_ = pooled.n1;
    events_ = pooled.events;
    blocks_.clear();
    const std::size_t n = pooled.size();
    risk_table table;  // pooled-only view: group split left blank for weights
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      double d = 0.0;
      while (j < n && pooled.times[j] == pooled.times[i]) {
        if (pooled.events[j]) d += 1.0;
        ++j;
      }
      block blk;
      blk.begin = i;
      blk.end = j;
      blk.d = d;
      blk.y = static_cast<double>(n - i);
      blocks_.push_back(blk);
      if (d > 0.0) {
        risk_row row;
        row.time = pooled.times[i];
        row.d = d;
        row.y = blk.y;
        table.rows.push_back(row);
      }
      i = j;
    }
    if (table.rows.empty())
      throw error(errc::no_events, name_ + ": no events in the pooled sample");
    const std::vector<double> w = detail::logrank_weights(table, rule_);
    std::size_t next = 0;
    for (block& blk : blocks_) blk.weight = blk.d > 0.0 ? w[next++] : 0.0;
  }

  double evaluate(std::span<const std::uint8_t> labels) const override {
    double y1 = static_cast<double>(n1_);
    double num = 0.0, den = 0.0;
    for (const block& blk : blocks_) {
      if (blk.d > 0.0) {
        // Events sort ahead of censorings inside a tied block, so the event
        // slots are exactly [begin, begin + d).
        double d1 = 0.0;
        const std::size_t d_end = blk.begin + static_cast<std::size_t>(blk.d);
        for (std::size_t s = blk.begin; s < d_end; ++s) d1 += labels[s];
        const double frac1 = y1 / blk.y;
        num += blk.weight * (d1 - blk.d * frac1);
        if (blk.y > 1.0)
          den += blk.weight * blk.weight * blk.d * frac1 * (1.0 - frac1) * (blk.y - blk.d) /
                 (blk.y - 1.0);
      }
      for (std::size_t s = blk.begin; s < blk.end; ++s) y1 -= labels[s];
    }
    if (!(den > 0.0))
      throw error(errc::zero_variance, name_ + ": zero variance across event times");
    return num * num / den;
  }

 private:
  struct block {
    std::size_t begin = 0, end = 0;
    double d = 0.0, y = 0.0, weight = 0.0;
  };

  std::string name_;
  weight_rule rule_;
  std::size_t n1_ = 0;
  std::vector<std::uint8_t> events_;
  std::vector<block> blocks_;
};

// ---------------------------------------------------------------------------
// Censored Kolmogorov-Smirnov and Cramer-von Mises (hazard-difference form)
// ---------------------------------------------------------------------------

namespace detail {

// Jumps of one group's variance process A_j and cumulative hazard, indexed by
// the group's distinct event times.  A_j accumulates
//   n_j * d / (Y (Y + 1))
// at each distinct event time (every tied event shares the same true at-risk
// count Y), the hazard accumulates d / Y.
struct group_jumps {
  std::vector<double> times;
  std::vector<double> da;  // jump of A_j
  std::vector<double> dl;  // jump of the Nelson-Aalen estimate
};

inline void collect_group_jumps(std::span<const double> times, std::span<const std::uint8_t> events,
                                group_jumps& out) {
  out.times.clear();
  out.da.clear();
  out.dl.clear();
  const std::size_t m = times.size();
  const double scale = static_cast<double>(m);
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    double d = 0.0;
    while (j < m && times[j] == times[i]) {
      if (events[j]) d += 1.0;
      ++j;
    }
    if (d > 0.0) {
      const double y = static_cast<double>(m - i);
      out.times.push_back(times[i]);
      out.da.push_back(scale * d / (y * (y + 1.0)));
      out.dl.push_back(d / y);
    }
    i = j;
  }
}

struct omnibus_scalars {
  double ks_stabilized = 0.0;
  double ks_bounded = 0.0;
  double cvm_stabilized = 0.0;
  double cvm_bounded = 0.0;
  double tau = 0.0;
  double a_tau = 0.0;
};

// Shared sweep over the merged event times up to tau.  The two supremum
// statistics read the processes at each jump (right-continuous values); the
// two integral statistics accumulate left-limit integrand values against the
// jumps of A (stabilized weighting) and of H = A/(1+A) (bounded weighting).
// Group inputs must be sorted ascending with events first at ties.
inline omnibus_scalars schumacher_core(std::span<const double> t0,
                                       std::span<const std::uint8_t> e0,
                                       std::span<const double> t1,
                                       std::span<const std::uint8_t> e1,
                                       group_jumps& g0, group_jumps& g1) {
  collect_group_jumps(t0, e0, g0);
  collect_group_jumps(t1, e1, g1);
  const double n0 = static_cast<double>(t0.size());
  const double n1 = static_cast<double>(t1.size());
  const double n = n0 + n1;
  omnibus_scalars out;
  out.tau = std::min(t0.back(), t1.back());

  double a = 0.0, eps = 0.0;
  double sup_stab = 0.0, sup_bound = 0.0, cm_stab = 0.0, cm_bound = 0.0;
  std::size_t i0 = 0, i1 = 0;
  while (i0 < g0.times.size() || i1 < g1.times.size()) {
    double t;
    if (i0 < g0.times.size() && (i1 >= g1.times.size() || g0.times[i0] <= g1.times[i1]))
      t = g0.times[i0];
    else
      t = g1.times[i1];
    if (t > out.tau) break;
    double da = 0.0, deps = 0.0;
    if (i0 < g0.times.size() && g0.times[i0] == t) {
      da += (n / n0) * g0.da[i0];
      deps -= g0.dl[i0];
      ++i0;
    }
    if (i1 < g1.times.size() && g1.times[i1] == t) {
      da += (n / n1) * g1.da[i1];
      deps += g1.dl[i1];
      ++i1;
    }
    const double a_minus = a, eps_minus = eps;
    a += da;
    eps += deps;
    cm_stab += eps_minus * eps_minus * da;
    const double h_jump = a / (1.0 + a) - a_minus / (1.0 + a_minus);
    const double bounded_minus = eps_minus / (1.0 + a_minus);
    cm_bound += bounded_minus * bounded_minus * h_jump;
    sup_stab = std::max(sup_stab, std::fabs(eps));
    sup_bound = std::max(sup_bound, std::fabs(eps) / (1.0 + a));
  }
  out.a_tau = a;
  if (!(a > 0.0))
    throw error(errc::degenerate_variance, "no events before the comparison horizon");
  out.ks_stabilized = n * sup_stab / std::sqrt(a);
  out.ks_bounded = n * sup_bound;
  out.cvm_stabilized = (n / (a * a)) * cm_stab;
  out.cvm_bounded = n * cm_bound;
  return out;
}

inline omnibus_scalars schumacher_from_data(const two_sample_data& data) {
  const ordered_sample s0 = order_with_censoring(data.group0);
  const ordered_sample s1 = order_with_censoring(data.group1);
  group_jumps g0, g1;
  return schumacher_core(s0.times, s0.events, s1.times, s1.events, g0, g1);
}

}  // namespace detail

// The estimated processes behind the censored omnibus statistics, restricted
// to [0, tau] with tau the smaller of the two largest observed times:
// per-group variance processes a0/a1, their pooled combination a, the
// time-transformation h = a/(1+a), the cumulative-hazard difference eps, and
// the constant stabilizing weight psi = 1/sqrt(a(tau)).
struct schumacher_processes {
  double tau = 0.0;
  double a_tau = 0.0;
  double psi = 0.0;
  step_curve a0, a1, a, h, eps;
};

inline schumacher_processes build_schumacher_processes(const two_sample_data& data) {
  const ordered_sample s0 = order_with_censoring(data.group0);
  const ordered_sample s1 = order_with_censoring(data.group1);
  detail::group_jumps g0, g1;
  detail::collect_group_jumps(s0.times, s0.events, g0);
  detail::collect_group_jumps(s1.times, s1.events, g1);
  const double n0 = static_cast<double>(s0.size());
  const double n1 = static_cast<double>(s1.size());
  const double n = n0 + n1;

  schumacher_processes out;
  out.tau = std::min(s0.times.back(), s1.times.back());
  auto cumulate = [&](const detail::group_jumps& g, const std::vector<double>& jumps) {
    step_curve c;
    c.initial_value = 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < g.times.size() && g.times[j] <= out.tau; ++j) {
      acc += jumps[j];
      c.knots.push_back(g.times[j]);
      c.values.push_back(acc);
    }
    return c;
  };
  out.a0 = cumulate(g0, g0.da);
  out.a1 = cumulate(g1, g1.da);

  // Merged knots for the pooled curves.
  std::vector<double> knots;
  for (double t : out.a0.knots) knots.push_back(t);
  for (double t : out.a1.knots) knots.push_back(t);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  out.a.initial_value = 0.0;
  out.h.initial_value = 0.0;
  out.eps.initial_value = 0.0;
  step_curve l0 = cumulate(g0, g0.dl);
  step_curve l1 = cumulate(g1, g1.dl);
  for (double t : knots) {
    const double at = (n / n0) * out.a0.at(t) + (n / n1) * out.a1.at(t);
    out.a.knots.push_back(t);
    out.a.values.push_back(at);
    out.h.knots.push_back(t);
    out.h.values.push_back(at / (1.0 + at));
    out.eps.knots.push_back(t);
    out.eps.values.push_back(l1.at(t) - l0.at(t));
  }
  out.a_tau = out.a.knots.empty() ? 0.0 : out.a.values.back();
  out.psi = out.a_tau > 0.0 ? 1.0 / std::sqrt(out.a_tau)
                            : std::numeric_limits<double>::infinity();
  return out;
}

struct omnibus_pair {
  double stabilized = 0.0;  // constant 1/sqrt(a(tau)) weighting
  double bounded = 0.0;     // time-varying 1/(1+a(t)) weighting
};

inline omnibus_pair ks_censored(const two_sample_data& data) {
  const detail::omnibus_scalars s = detail::schumacher_from_data(data);
  return {s.ks_stabilized, s.ks_bounded};
}

inline omnibus_pair cvm_censored(const two_sample_data& data) {
  const detail::omnibus_scalars s = detail::schumacher_from_data(data);
  return {s.cvm_stabilized, s.cvm_bounded};
}

enum class omnibus_kind { ks_stabilized, ks_bounded, cvm_stabilized, cvm_bounded };

// Permutation-facing evaluator for one of the four omnibus statistics.
// evaluate() splits the pooled slots by label into per-group scratch buffers
// (each restriction is already sorted with events first) and runs the sweep.
class omnibus_statistic final : public two_sample_statistic {
 public:
  omnibus_statistic(std::string name, omnibus_kind kind) : name_(std::move(name)), kind_(kind) {}

  const std::string& name() const override { return name_; }

  void bind(const pooled_layout& pooled) override {
    times_ = pooled.times;
    events_ = pooled.events;
    n0_ = pooled.n0;
    n1_ = pooled.n1;
  }

  double evaluate(std::span<const std::uint8_t> labels) const override {
    thread_local std::vector<double> t0, t1;
    thread_local std::vector<std::uint8_t> e0, e1;
    thread_local detail::group_jumps g0, g1;
    t0.clear();
    t1.clear();
    e0.clear();
    e1.clear();
    for (std::size_t i = 0; i < times_.size(); ++i) {
      if (labels[i] == 0) {
        t0.push_back(times_[i]);
        e0.push_back(events_[i]);
      } else {
        t1.push_back(times_[i]);
        e1.push_back(events_[i]);
      }
    }
    const detail::omnibus_scalars s = detail::schumacher_core(t0, e0, t1, e1, g0, g1);
    switch (kind_) {
      case omnibus_kind::ks_stabilized:
        return s.ks_stabilized;
      case omnibus_kind::ks_bounded:
        return s.ks_bounded;
      case omnibus_kind::cvm_stabilized:
        return s.cvm_stabilized;
      default:
        return s.cvm_bounded;
    }
  }

 private:
  std::string name_;
  omnibus_kind kind_;
  std::vector<double> times_;
  std::vector<std::uint8_t> events_;
  std::size_t n0_ = 0, n1_ = 0;
};

}  // namespace survdiff
