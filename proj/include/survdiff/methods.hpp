#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "survdiff/classical.hpp"
#include "survdiff/errors.hpp"
#include "survdiff/kernels.hpp"
#include "survdiff/statistics.hpp"

namespace survdiff {

// Method descriptors are strings of the form `name` or `name:key=value,...`:
//   energy:alpha=1            gaussian:sigma=1        laplacian:sigma=1
//   ratquad:c=1,beta=1        matern:sigma=1,nu=1.5
//   logrank  gehan  tarone-ware  peto-peto  fleming-harrington:rho=1,gamma=1
//   ks-censored  ks0-censored  cvm-censored  cvm0-censored
// The energy/kernel methods accept form=u (normalized U-type) or form=v
// (plain V-type).  The default differs by family: energy defaults to form=u,
// because its V-type statistic turns negative whenever the groups'
// product-limit masses differ — an upper-tail permutation test then looks at
// the wrong tail — while the kernel discrepancies default to form=v, which
// is nonnegative in every case and stays sensitive to mass differences such
// as cured fractions.

namespace detail {

struct parsed_descriptor {
  std::string family;
  std::map<std::string, std::string, std::less<>> params;
};

inline parsed_descriptor parse_descriptor(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  parsed_descriptor out;
  const std::size_t colon = text.find(':');
  out.family = std::string(trim(text.substr(0, colon)));
  if (out.family.empty()) throw error(errc::unknown_method, "empty method descriptor");
  if (colon == std::string_view::npos) return out;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    std::string_view item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      throw error(errc::invalid_parameter,
                  "method parameter without '=': " + std::string(item));
    const std::string key(trim(item.substr(0, eq)));
    const std::string value(trim(item.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw error(errc::invalid_parameter, "empty method parameter in: " + std::string(item));
    if (!out.params.emplace(key, value).second)
      throw error(errc::invalid_parameter, "duplicate method parameter: " + key);
  }
  return out;
}

inline double parse_number(const std::string& family, const std::string& key,
                           const std::string& value) {
  double v = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw error(errc::invalid_parameter,
                family + ": parameter " + key + " is not a number: " + value);
  return v;
}

// Shortest round-trip decimal form of a double.
inline std::string format_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

class descriptor_reader {
 public:
  explicit descriptor_reader(parsed_descriptor parsed) : parsed_(std::move(parsed)) {}

  double number(const std::string& key, double fallback) {
    const auto it = parsed_.params.find(key);
    if (it == parsed_.params.end()) return fallback;
    used_.push_back(key);
    return parse_number(parsed_.family, key, it->second);
  }

  std::string text(const std::string& key, std::string fallback) {
    const auto it = parsed_.params.find(key);
    if (it == parsed_.params.end()) return fallback;
    used_.push_back(key);
    return it->second;
  }

  void finish() const {
    for (const auto& [key, value] : parsed_.params) {
      bool known = false;
      for (const std::string& u : used_)
        if (u == key) known = true;
      if (!known)
        throw error(errc::invalid_parameter,
                    parsed_.family + ": unknown parameter '" + key + "'");
    }
  }

  const std::string& family() const { return parsed_.family; }

 private:
  parsed_descriptor parsed_;
  std::vector<std::string> used_;
};

inline statistic_form parse_form(const std::string& family, const std::string& text) {
  if (text == "u") return statistic_form::u_normalized;
  if (text == "v") return statistic_form::v;
  throw error(errc::invalid_parameter, family + ": form must be 'u' or 'v', got '" + text + "'");
}

inline std::string form_suffix(statistic_form form, statistic_form family_default) {
  if (form == family_default) return "";
  return form == statistic_form::v ? ",form=v" : ",form=u";
}

}  // namespace detail

// Builds the statistic evaluator named by a descriptor string.  The returned
// object reports a canonical descriptor through name(): parameters are made
// explicit, ordered, and formatted so the name parses back to the same
// method.
inline std::unique_ptr<two_sample_statistic> make_method(std::string_view descriptor) {
  using detail::format_number;
  detail::descriptor_reader reader(detail::parse_descriptor(descriptor));
  const std::string& family = reader.family();

  auto pair_stat = [&](statistic_family fam, const std::string& params,
                       statistic_form family_default) {
    const char* fallback = family_default == statistic_form::v ? "v" : "u";
    const statistic_form form = detail::parse_form(family, reader.text("form", fallback));
    reader.finish();
    const std::string name = family + ":" + params + detail::form_suffix(form, family_default);
    return std::make_unique<weighted_pair_statistic>(name, std::move(fam), form, weight_mode::km);
  };

  if (family == "energy") {
    const double alpha = reader.number("alpha", 1.0);
    return pair_stat(semimetric_spec{alpha}, "alpha=" + format_number(alpha),
                     statistic_form::u_normalized);
  }
  if (family == "gaussian") {
    const double sigma = reader.number("sigma", 1.0);
    return pair_stat(kernel_spec{gaussian_kernel{sigma}}, "sigma=" + format_number(sigma),
                     statistic_form::v);
  }
  if (family == "laplacian") {
    const double sigma = reader.number("sigma", 1.0);
    return pair_stat(kernel_spec{laplacian_kernel{sigma}}, "sigma=" + format_number(sigma),
                     statistic_form::v);
  }
  if (family == "ratquad") {
    const double c = reader.number("c", 1.0);
    const double beta = reader.number("beta", 1.0);
    return pair_stat(kernel_spec{rational_quadratic_kernel{c, beta}},
                     "c=" + format_number(c) + ",beta=" + format_number(beta),
                     statistic_form::v);
  }
  if (family == "matern") {
    const double sigma = reader.number("sigma", 1.0);
    const double nu = reader.number("nu", 1.5);
    return pair_stat(kernel_spec{matern_kernel{sigma, nu}},
                     "sigma=" + format_number(sigma) + ",nu=" + format_number(nu),
                     statistic_form::v);
  }

  auto logrank_stat = [&](weight_rule rule, std::string name) {
    reader.finish();
    return std::make_unique<logrank_statistic>(std::move(name), rule);
  };
  if (family == "logrank") return logrank_stat({logrank_weight::logrank}, family);
  if (family == "gehan") return logrank_stat({logrank_weight::gehan}, family);
  if (family == "tarone-ware") return logrank_stat({logrank_weight::tarone_ware}, family);
  if (family == "peto-peto") return logrank_stat({logrank_weight::peto_peto}, family);
  if (family == "fleming-harrington") {
    const double rho = reader.number("rho", 0.0);
    const double gamma = reader.number("gamma", 0.0);
    return logrank_stat({logrank_weight::fleming_harrington, rho, gamma},
                        family + ":rho=" + format_number(rho) +
                            ",gamma=" + format_number(gamma));
  }

  auto omnibus_stat = [&](omnibus_kind kind) {
    reader.finish();
    return std::make_unique<omnibus_statistic>(family, kind);
  };
  if (family == "ks-censored") return omnibus_stat(omnibus_kind::ks_stabilized);
  if (family == "ks0-censored") return omnibus_stat(omnibus_kind::ks_bounded);
  if (family == "cvm-censored") return omnibus_stat(omnibus_kind::cvm_stabilized);
  if (family == "cvm0-censored") return omnibus_stat(omnibus_kind::cvm_bounded);

  throw error(errc::unknown_method, "unknown method: " + family);
}

// Canonical name for a descriptor (parse + rebuild).
inline std::string canonical_method_name(std::string_view descriptor) {
  return make_method(descriptor)->name();
}

// One canonical descriptor per registered family, defaults spelled out.
inline std::vector<std::string> registered_methods() {
  return {
      "energy:alpha=1",
      "gaussian:sigma=1",
      "laplacian:sigma=1",
      "ratquad:c=1,beta=1",
      "matern:sigma=1,nu=1.5",
      "logrank",
      "gehan",
      "tarone-ware",
      "peto-peto",
      "fleming-harrington:rho=1,gamma=1",
      "ks-censored",
      "ks0-censored",
      "cvm-censored",
      "cvm0-censored",
  };
}

// The fourteen-method roster used by the built-in simulation studies.
inline std::vector<std::string> study_roster() {
  return {
      "energy:alpha=1",
      "energy:alpha=0.4",
      "energy:alpha=0.8",
      "energy:alpha=1.2",
      "energy:alpha=1.6",
      "gaussian:sigma=1",
      "laplacian:sigma=1",
      "ratquad:c=1,beta=1",
      "ratquad:c=2,beta=2",
      "logrank",
      "gehan",
      "tarone-ware",
      "peto-peto",
      "fleming-harrington:rho=1,gamma=1",
  };
}

}  // namespace survdiff
