#pragma once

#include <cmath>
#include <type_traits>
#include <variant>

#include "survdiff/errors.hpp"

namespace survdiff {

// Power semimetric rho(x, y) = |x - y|^alpha, negative definite for
// alpha in (0, 2].
struct semimetric_spec {
  double alpha = 1.0;
};

inline void check(const semimetric_spec& s) {
  if (!(s.alpha > 0.0) || s.alpha > 2.0)
    throw error(errc::invalid_parameter, "semimetric exponent must lie in (0, 2]");
}

inline double eval_semimetric(const semimetric_spec& s, double x, double y) {
  const double r = std::fabs(x - y);
  if (s.alpha == 1.0) return r;
  if (s.alpha == 2.0) return r * r;
  return std::pow(r, s.alpha);
}

// Characteristic kernels on the real line.
struct gaussian_kernel {
  double sigma = 1.0;  // K(x,y) = exp(-sigma |x-y|^2)
};
struct laplacian_kernel {
  double sigma = 1.0;  // K(x,y) = exp(-sigma |x-y|)
};
struct rational_quadratic_kernel {
  double offset = 1.0;  // K(x,y) = (|x-y| + offset)^(-beta)
  double beta = 1.0;
};
struct matern_kernel {
  double sigma = 1.0;  // length scale
  double nu = 1.5;     // smoothness
};

using kernel_spec =
    std::variant<gaussian_kernel, laplacian_kernel, rational_quadratic_kernel, matern_kernel>;

inline void check(const kernel_spec& k) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, gaussian_kernel> || std::is_same_v<T, laplacian_kernel>) {
          if (!(v.sigma > 0.0)) throw error(errc::invalid_parameter, "kernel scale must be positive");
        } else if constexpr (std::is_same_v<T, rational_quadratic_kernel>) {
          if (!(v.offset > 0.0) || !(v.beta > 0.0))
            throw error(errc::invalid_parameter, "rational quadratic parameters must be positive");
        } else {
          if (!(v.sigma > 0.0) || !(v.nu > 0.0))
            throw error(errc::invalid_parameter, "matern parameters must be positive");
        }
      },
      k);
}

namespace detail {

// Matern correlation at distance r >= 0.  Half-integer smoothness uses the
// closed forms; other orders go through the modified Bessel function of the
// second kind.  K(x,x) = 1 by continuity.
inline double matern_value(double r, double sigma, double nu) {
  if (r == 0.0) return 1.0;
  const double z = std::sqrt(2.0 * nu) * r / sigma;
  if (nu == 0.5) return std::exp(-z);
  if (nu == 1.5) return (1.0 + z) * std::exp(-z);
  if (nu == 2.5) return (1.0 + z + z * z / 3.0) * std::exp(-z);
  const double scale = std::pow(2.0, 1.0 - nu) / std::tgamma(nu);
  const double val = scale * std::pow(z, nu) * std::cyl_bessel_k(nu, z);
  // Guard against underflow for large z: correlation is in [0, 1].
  return std::isfinite(val) ? val : 0.0;
}

}  // namespace detail

inline double eval_kernel(const kernel_spec& k, double x, double y) {
  const double r = std::fabs(x - y);
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, gaussian_kernel>) {
          return std::exp(-v.sigma * r * r);
        } else if constexpr (std::is_same_v<T, laplacian_kernel>) {
          return std::exp(-v.sigma * r);
        } else if constexpr (std::is_same_v<T, rational_quadratic_kernel>) {
          return std::pow(r + v.offset, -v.beta);
        } else {
          return detail::matern_value(r, v.sigma, v.nu);
        }
      },
      k);
}

// Kernel induced by a semimetric around an anchor point x0:
//   K(x, y) = (rho(x, x0) + rho(y, x0) - rho(x, y)) / 2.
// With this kernel the squared discrepancy identity ties the energy and MMD
// statistics together for probability-normalized weights.
struct induced_kernel {
  semimetric_spec rho;
  double anchor = 0.0;
};

inline double eval_kernel(const induced_kernel& k, double x, double y) {
  return 0.5 * (eval_semimetric(k.rho, x, k.anchor) + eval_semimetric(k.rho, y, k.anchor) -
                eval_semimetric(k.rho, x, y));
}

}  // namespace survdiff
