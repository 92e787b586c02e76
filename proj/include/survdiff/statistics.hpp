#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "survdiff/errors.hpp"
#include "survdiff/kernels.hpp"
#include "survdiff/km.hpp"
#include "survdiff/numeric.hpp"
#include "survdiff/sample.hpp"

namespace survdiff {

// What is being compared: an energy distance built from a power semimetric,
// or a squared discrepancy built from a kernel (either a stock kernel or one
// induced by a semimetric).
using statistic_family = std::variant<semimetric_spec, kernel_spec, induced_kernel>;

enum class statistic_form {
  v,             // plain V-type form, diagonal pairs included
  v_normalized,  // V-type with per-group weights normalized to total mass 1
  u_normalized,  // ratio-of-weighted-means form, within-group diagonals excluded
};

enum class weight_mode {
  km,       // product-limit jump weights from the censored observations
  uniform,  // 1/m per observation; ignores event indicators entirely
};

inline void check(const statistic_family& fam) {
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, induced_kernel>)
          check(f.rho);
        else
          check(f);
      },
      fam);
}

// Sample-size scaling applied to a raw statistic before permutation testing.
inline double t_scale(double raw, std::size_t n0, std::size_t n1) {
  const double a = static_cast<double>(n0);
  const double b = static_cast<double>(n1);
  return raw * (a * b) / (a + b);
}

// A two-sample statistic bound to one pooled dataset and evaluated repeatedly
// under different label assignments.  bind() may do O(n^2) preparation;
// evaluate() must be const and safe to call concurrently, and `labels` is
// always a rearrangement of the bound layout's label vector.
class two_sample_statistic {
 public:
  virtual ~two_sample_statistic() = default;
  virtual const std::string& name() const = 0;
  virtual void bind(const pooled_layout& pooled) = 0;
  virtual double evaluate(std::span<const std::uint8_t> labels) const = 0;
  // Whether reports should also show the statistic multiplied by
  // n0 n1 / (n0 + n1); the classical tests are already standardized.
  virtual bool uses_sample_size_scaling() const { return false; }
};

namespace detail {

struct pair_blocks {
  // Off-diagonal unordered-pair sums per label block and per-group totals.
  double s00 = 0.0, s01 = 0.0, s11 = 0.0;  // sum over a<b of w_a w_b h_ab
  double d0 = 0.0, d1 = 0.0;               // sum over a of w_a^2 h_aa
  double sum0 = 0.0, sum1 = 0.0;           // sum of weights per group
  double sq0 = 0.0, sq1 = 0.0;             // sum of squared weights per group
};

struct pair_scratch {
  std::vector<double> weights;
  std::vector<double> rows00, rows01, rows11;
};

inline pair_scratch& local_pair_scratch() {
  thread_local pair_scratch scratch;
  return scratch;
}

}  // namespace detail

// Energy-distance / kernel-discrepancy statistic over weighted observations.
// bind() precomputes the full pairwise h matrix once; each evaluate() then
// costs one O(n) weight pass plus one O(n^2) accumulation, which is what
// makes permutation calibration affordable.
class weighted_pair_statistic final : public two_sample_statistic {
 public:
  weighted_pair_statistic(std::string name, statistic_family family, statistic_form form,
                          weight_mode weights)
      : name_(std::move(name)), family_(std::move(family)), form_(form), weights_(weights) {
    check(family_);
    energy_sign_ = std::holds_alternative<semimetric_spec>(family_);
  }

  const std::string& name() const override { return name_; }

  bool uses_sample_size_scaling() const override { return true; }

  void bind(const pooled_layout& pooled) override {
    n_ = pooled.size();
    n0_ = pooled.n0;
    n1_ = pooled.n1;
    events_ = pooled.events;
    h_.assign(n_ * n_, 0.0);
    diag_.assign(n_, 0.0);
    auto h_of = [&](double x, double y) {
      return std::visit([&](const auto& f) { return pair_value(f, x, y); }, family_);
    };
    for (std::size_t a = 0; a < n_; ++a) {
      diag_[a] = h_of(pooled.times[a], pooled.times[a]);
      for (std::size_t b = a + 1; b < n_; ++b) {
        const double v = h_of(pooled.times[a], pooled.times[b]);
        h_[a * n_ + b] = v;
        h_[b * n_ + a] = v;
      }
    }
  }

  double evaluate(std::span<const std::uint8_t> labels) const override {
    const detail::pair_blocks blocks = accumulate(labels);
    const double s0 = blocks.sum0, s1 = blocks.sum1;
    if (!(s0 > 0.0) || !(s1 > 0.0))
      throw error(errc::degenerate_weights, name_ + ": a group carries no positive weight");
    const double between_full = blocks.s01;                  // all cross pairs
    const double within0_full = 2.0 * blocks.s00 + blocks.d0;
    const double within1_full = 2.0 * blocks.s11 + blocks.d1;
    double between, within0, within1;
    switch (form_) {
      case statistic_form::v:
        between = between_full;
        within0 = within0_full;
        within1 = within1_full;
        break;
      case statistic_form::v_normalized:
        between = between_full / (s0 * s1);
        within0 = within0_full / (s0 * s0);
        within1 = within1_full / (s1 * s1);
        break;
      case statistic_form::u_normalized: {
        const double den0 = s0 * s0 - blocks.sq0;
        const double den1 = s1 * s1 - blocks.sq1;
        if (!(den0 > 0.0) || !(den1 > 0.0))
          throw error(errc::degenerate_weights,
                      name_ + ": a group has fewer than two positive weights");
        between = between_full / (s0 * s1);
        within0 = 2.0 * blocks.s00 / den0;
        within1 = 2.0 * blocks.s11 / den1;
        break;
      }
      default:
        throw error(errc::invalid_parameter, "unknown statistic form");
    }
    const double gap = 2.0 * between - within0 - within1;
    return energy_sign_ ? gap : -gap;
  }

 private:
  template <class F>
  static double pair_value(const F& f, double x, double y) {
    if constexpr (std::is_same_v<F, semimetric_spec>)
      return eval_semimetric(f, x, y);
    else
      return eval_kernel(f, x, y);
  }

  detail::pair_blocks accumulate(std::span<const std::uint8_t> labels) const {
    detail::pair_scratch& scratch = detail::local_pair_scratch();
    std::vector<double>& w = scratch.weights;
    w.assign(n_, 0.0);
    detail::pair_blocks blocks;

    // Weight pass: walk the pooled order once; restricted to either group it
    // visits that group's observations in sorted event-first order.
    if (weights_ == weight_mode::km) {
      detail::km_weight_walker walk0(n0_), walk1(n1_);
      for (std::size_t i = 0; i < n_; ++i) {
        const bool event = events_[i] != 0;
        const double wi = labels[i] == 0 ? walk0.step(event) : walk1.step(event);
        w[i] = wi;
        if (labels[i] == 0) {
          blocks.sum0 += wi;
          blocks.sq0 += wi * wi;
          blocks.d0 += wi * wi * diag_[i];
        } else {
          blocks.sum1 += wi;
          blocks.sq1 += wi * wi;
          blocks.d1 += wi * wi * diag_[i];
        }
      }
    } else {
      const double w0 = 1.0 / static_cast<double>(n0_);
      const double w1 = 1.0 / static_cast<double>(n1_);
      for (std::size_t i = 0; i < n_; ++i) {
        const double wi = labels[i] == 0 ? w0 : w1;
        w[i] = wi;
        if (labels[i] == 0) {
          blocks.sum0 += wi;
          blocks.sq0 += wi * wi;
          blocks.d0 += wi * wi * diag_[i];
        } else {
          blocks.sum1 += wi;
          blocks.sq1 += wi * wi;
          blocks.d1 += wi * wi * diag_[i];
        }
      }
    }

    // Pair pass over a < b, one row partial per block, combined pairwise so
    // the result is independent of scheduling and stable in precision.
    scratch.rows00.clear();
    scratch.rows01.clear();
    scratch.rows11.clear();
    for (std::size_t a = 0; a < n_; ++a) {
      const double wa = w[a];
      if (wa == 0.0) continue;
      const double* row = h_.data() + a * n_;
      double same = 0.0, cross = 0.0;
      const std::uint8_t za = labels[a];
      for (std::size_t b = a + 1; b < n_; ++b) {
        const double wb = w[b];
        if (wb == 0.0) continue;
        const double term = wa * wb * row[b];
        if (labels[b] == za)
          same += term;
        else
          cross += term;
      }
      if (za == 0)
        scratch.rows00.push_back(same);
      else
        scratch.rows11.push_back(same);
      scratch.rows01.push_back(cross);
    }
    blocks.s00 = pairwise_sum(scratch.rows00);
    blocks.s01 = pairwise_sum(scratch.rows01);
    blocks.s11 = pairwise_sum(scratch.rows11);
    return blocks;
  }

  std::string name_;
  statistic_family family_;
  statistic_form form_;
  weight_mode weights_;
  bool energy_sign_ = false;
  std::size_t n_ = 0, n0_ = 0, n1_ = 0;
  std::vector<std::uint8_t> events_;
  std::vector<double> h_;
  std::vector<double> diag_;
};

namespace detail {

inline double eval_pair_statistic(const statistic_family& fam, statistic_form form,
                                  weight_mode weights, const two_sample_data& data) {
  const pooled_layout pooled = pool_samples(data);
  weighted_pair_statistic stat("statistic", fam, form, weights);
  stat.bind(pooled);
  return stat.evaluate(pooled.labels);
}

}  // namespace detail

// V-type statistic with product-limit weights (censoring-aware).
inline double v_statistic_censored(const statistic_family& fam, const two_sample_data& data) {
  return detail::eval_pair_statistic(fam, statistic_form::v, weight_mode::km, data);
}

// V-type statistic with per-group probability-normalized product-limit
// weights; this is the form for which the energy / kernel-discrepancy
// identity holds exactly.
inline double v_statistic_censored_normalized(const statistic_family& fam,
                                              const two_sample_data& data) {
  return detail::eval_pair_statistic(fam, statistic_form::v_normalized, weight_mode::km, data);
}

// Normalized U-type statistic with product-limit weights: each of the three
// pair averages is divided by its total pair weight, and within-group
// diagonals are excluded.
inline double u_statistic_censored_normalized(const statistic_family& fam,
                                              const two_sample_data& data) {
  return detail::eval_pair_statistic(fam, statistic_form::u_normalized, weight_mode::km, data);
}

// Uncensored reference statistic: uniform weights, event flags ignored.
inline double statistic_uncensored(const statistic_family& fam, statistic_form form,
                                   const two_sample_data& data) {
  return detail::eval_pair_statistic(fam, form, weight_mode::uniform, data);
}

}  // namespace survdiff
