#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "survdiff/errors.hpp"
#include "survdiff/methods.hpp"
#include "survdiff/numeric.hpp"
#include "survdiff/permutation.hpp"
#include "survdiff/sample.hpp"
#include "survdiff/simulate.hpp"

namespace survdiff {

namespace detail {

inline std::string trim_field(std::string s) {
  const char* ws = " \t\r";
  const std::size_t b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(trim_field(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

inline double parse_csv_number(const std::string& text, std::size_t line_no,
                               const char* what) {
  try {
    std::size_t consumed = 0;
    const double v = std::stod(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw error(errc::schema_error, std::string("line ") + std::to_string(line_no) +
                                        ": cannot parse " + what + " from '" + text + "'");
  }
}

// NaN-safe shortest decimal form for CSV cells.
inline std::string csv_number(double v) {
  if (std::isnan(v)) return "NA";
  return format_number(v);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dataset CSV: header `time,event,group`, events 0/1, groups 0/1
// ---------------------------------------------------------------------------

inline two_sample_data read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::file_not_found, "cannot open dataset file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw error(errc::schema_error, path + ": empty file");
  {
    const std::vector<std::string> header = detail::split_csv_line(line);
    if (header.size() != 3 || header[0] != "time" || header[1] != "event" || header[2] != "group")
      throw error(errc::schema_error, path + ": header must be 'time,event,group'");
  }
  std::vector<double> times[2];
  std::vector<int> events[2];
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim_field(line).empty()) continue;
    const std::vector<std::string> fields = detail::split_csv_line(line);
    if (fields.size() != 3)
      throw error(errc::schema_error,
                  path + ": line " + std::to_string(line_no) + ": expected 3 fields");
    const double t = detail::parse_csv_number(fields[0], line_no, "time");
    const double ev = detail::parse_csv_number(fields[1], line_no, "event");
    const double g = detail::parse_csv_number(fields[2], line_no, "group");
    if (ev != 0.0 && ev != 1.0)
      throw error(errc::schema_error,
                  path + ": line " + std::to_string(line_no) + ": event must be 0 or 1");
    if (g != 0.0 && g != 1.0)
      throw error(errc::schema_error,
                  path + ": line " + std::to_string(line_no) + ": group must be 0 or 1");
    const int gi = static_cast<int>(g);
    times[gi].push_back(t);
    events[gi].push_back(static_cast<int>(ev));
  }
  if (times[0].empty() || times[1].empty())
    throw error(errc::schema_error, path + ": both groups need at least one row");
  two_sample_data data;
  data.group0 = validate(times[0], events[0]);
  data.group1 = validate(times[1], events[1]);
  return data;
}

inline void write_dataset_csv(const std::string& path, const two_sample_data& data) {
  std::ofstream out(path);
  if (!out) throw error(errc::file_not_found, "cannot write dataset file: " + path);
  out << "time,event,group\n";
  auto rows = [&](const survival_sample& s, int group) {
    for (std::size_t i = 0; i < s.size(); ++i)
      out << detail::csv_number(s.times[i]) << ',' << int(s.events[i]) << ',' << group << '\n';
  };
  rows(data.group0, 0);
  rows(data.group1, 1);
}

// ---------------------------------------------------------------------------
// Study outputs
// ---------------------------------------------------------------------------

// Long form: one row per (replication, method).
inline void write_long_csv(const std::string& path, const study_result& result) {
  std::ofstream out(path);
  if (!out) throw error(errc::file_not_found, "cannot write results file: " + path);
  out << "replication,method,p_value\n";
  for (std::int64_t rep = 0; rep < result.replications; ++rep)
    for (std::size_t m = 0; m < result.methods.size(); ++m)
      out << rep << ',' << result.methods[m] << ','
          << detail::csv_number(result.p_at(rep, m)) << '\n';
}

inline void write_summary_csv(const std::string& path, const study_result& result) {
  std::ofstream out(path);
  if (!out) throw error(errc::file_not_found, "cannot write summary file: " + path);
  out << "method,rejection_rate,mean_p,sd_p,n_degenerate\n";
  for (const method_summary& s : result.summaries)
    out << s.method << ',' << detail::csv_number(s.rejection_rate) << ','
        << detail::csv_number(s.mean_p) << ',' << detail::csv_number(s.sd_p) << ','
        << s.degenerate << '\n';
}

// ---------------------------------------------------------------------------
// Survival curves: CSV and SVG
// ---------------------------------------------------------------------------

using named_curve = std::pair<std::string, step_curve>;

inline void write_curve_csv(const std::string& path, const std::vector<named_curve>& curves) {
  std::ofstream out(path);
  if (!out) throw error(errc::file_not_found, "cannot write curve file: " + path);
  out << "group,t,survival\n";
  for (const named_curve& c : curves) {
    if (c.second.knots.empty() || c.second.knots.front() > 0.0)
      out << c.first << ",0," << detail::csv_number(c.second.initial_value) << '\n';
    for (std::size_t i = 0; i < c.second.knots.size(); ++i)
      out << c.first << ',' << detail::csv_number(c.second.knots[i]) << ','
          << detail::csv_number(c.second.values[i]) << '\n';
  }
}

inline void write_curve_svg(const std::string& path, const std::string& title,
                            const std::vector<named_curve>& curves) {
  std::ofstream out(path);
  if (!out) throw error(errc::file_not_found, "cannot write curve plot: " + path);
  const double width = 640, height = 420;
  const double left = 60, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  double t_max = 1.0;
  double v_max = 1.0;
  for (const named_curve& c : curves) {
    if (!c.second.knots.empty()) t_max = std::max(t_max, c.second.knots.back());
    v_max = std::max(v_max, c.second.initial_value);
    for (double v : c.second.values) v_max = std::max(v_max, v);
  }
  auto sx = [&](double t) { return left + plot_w * t / t_max; };
  auto sy = [&](double v) { return top + plot_h * (1.0 - v / v_max); };
  static const char* palette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                                  "#66ccee", "#aa3377"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << ' ' << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << title << "</text>\n";
  // axes
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double t = t_max * i / 5.0;
    const double v = v_max * i / 5.0;
    out << "<line x1=\"" << sx(t) << "\" y1=\"" << top + plot_h << "\" x2=\"" << sx(t)
        << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << sx(t) << "\" y=\"" << top + plot_h + 20
        << "\" text-anchor=\"middle\">" << detail::csv_number(std::round(t * 100.0) / 100.0)
        << "</text>\n";
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(v) << "\" x2=\"" << left << "\" y2=\""
        << sy(v) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left - 9 << "\" y=\"" << sy(v) + 4
        << "\" text-anchor=\"end\">" << detail::csv_number(std::round(v * 100.0) / 100.0)
        << "</text>\n";
  }
  // step paths
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const step_curve& c = curves[ci].second;
    std::ostringstream d;
    double v = c.initial_value;
    d << "M " << sx(0.0) << ' ' << sy(v);
    for (std::size_t i = 0; i < c.knots.size(); ++i) {
      d << " L " << sx(c.knots[i]) << ' ' << sy(v);
      v = c.values[i];
      d << " L " << sx(c.knots[i]) << ' ' << sy(v);
    }
    d << " L " << sx(t_max) << ' ' << sy(v);
    out << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\""
        << palette[ci % 6] << "\" stroke-width=\"1.8\"/>\n";
    // legend
    const double ly = top + 16.0 * (ci + 1);
    out << "<line x1=\"" << left + plot_w - 130 << "\" y1=\"" << ly << "\" x2=\""
        << left + plot_w - 105 << "\" y2=\"" << ly << "\" stroke=\"" << palette[ci % 6]
        << "\" stroke-width=\"3\"/>\n";
    out << "<text x=\"" << left + plot_w - 100 << "\" y=\"" << ly + 4 << "\">"
        << curves[ci].first << "</text>\n";
  }
  out << "</svg>\n";
}

// ---------------------------------------------------------------------------
// JSON: test results and scenario configurations
// ---------------------------------------------------------------------------

inline nlohmann::json test_result_to_json(const test_result& result) {
  nlohmann::json j;
  j["method"] = result.method;
  j["statistic"] = result.statistic;
  j["scaled_statistic"] = result.scaled;
  j["p_value"] = result.p_value;
  j["R"] = result.replications;
  j["seed"] = result.seed;
  j["exact"] = result.exact;
  j["degenerate_permutations"] = result.degenerate;
  return j;
}

inline nlohmann::json lifetime_to_json(const lifetime_model& model) {
  nlohmann::json j;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, exponential_lifetime>) {
          j["type"] = "exponential";
          j["rate"] = m.rate;
        } else if constexpr (std::is_same_v<T, gamma_lifetime>) {
          j["type"] = "gamma";
          j["shape"] = m.shape;
          j["rate"] = m.rate;
        } else if constexpr (std::is_same_v<T, lognormal_lifetime>) {
          j["type"] = "lognormal";
          j["mu"] = m.mu;
          j["sigma"] = m.sigma;
        } else {
          j["type"] = "piecewise";
          j["start"] = m.start;
          j["a"] = m.a;
          j["b"] = m.b;
          j["horizon"] = m.horizon;
        }
      },
      model);
  return j;
}

inline nlohmann::json censoring_to_json(const censoring_model& model) {
  nlohmann::json j;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, no_censoring>) {
          j["type"] = "none";
        } else if constexpr (std::is_same_v<T, exponential_censoring>) {
          j["type"] = "exponential";
          j["rate"] = m.rate;
        } else if constexpr (std::is_same_v<T, uniform_censoring>) {
          j["type"] = "uniform";
          j["upper"] = m.upper;
        } else {
          j["type"] = "target-rate";
          j["target"] = m.target;
        }
      },
      model);
  return j;
}

namespace detail {

inline double json_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw error(errc::schema_error, std::string("config: missing numeric field '") + key + "'");
  return j[key].get<double>();
}

}  // namespace detail

inline lifetime_model lifetime_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw error(errc::schema_error, "config: lifetime model needs a 'type' string");
  const std::string type = j["type"].get<std::string>();
  if (type == "exponential") return exponential_lifetime{detail::json_number(j, "rate")};
  if (type == "gamma")
    return gamma_lifetime{detail::json_number(j, "shape"), detail::json_number(j, "rate")};
  if (type == "lognormal")
    return lognormal_lifetime{detail::json_number(j, "mu"), detail::json_number(j, "sigma")};
  if (type == "piecewise") {
    piecewise_hazard_lifetime m;
    try {
      m.start = j.at("start").get<std::vector<double>>();
      m.a = j.at("a").get<std::vector<double>>();
      m.b = j.at("b").get<std::vector<double>>();
    } catch (const nlohmann::json::exception&) {
      throw error(errc::schema_error, "config: piecewise model needs start/a/b arrays");
    }
    m.horizon = detail::json_number(j, "horizon");
    return m;
  }
  throw error(errc::schema_error, "config: unknown lifetime type '" + type + "'");
}

inline censoring_model censoring_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw error(errc::schema_error, "config: censoring model needs a 'type' string");
  const std::string type = j["type"].get<std::string>();
  if (type == "none") return no_censoring{};
  if (type == "exponential") return exponential_censoring{detail::json_number(j, "rate")};
  if (type == "uniform") return uniform_censoring{detail::json_number(j, "upper")};
  if (type == "target-rate") return target_rate_censoring{detail::json_number(j, "target")};
  throw error(errc::schema_error, "config: unknown censoring type '" + type + "'");
}

inline nlohmann::json scenario_to_json(const scenario_config& cfg) {
  nlohmann::json j;
  j["n0"] = cfg.n0;
  j["n1"] = cfg.n1;
  j["lifetime0"] = lifetime_to_json(cfg.lifetime0);
  j["lifetime1"] = lifetime_to_json(cfg.lifetime1);
  j["censoring0"] = censoring_to_json(cfg.censoring0);
  j["censoring1"] = censoring_to_json(cfg.censoring1);
  j["methods"] = cfg.methods;
  j["replications"] = cfg.replications;
  j["permutations"] = cfg.permutations;
  j["alpha"] = cfg.alpha;
  j["seed"] = cfg.seed;
  return j;
}

// Accepts per-group keys (lifetime0/lifetime1, censoring0/censoring1) or the
// shorthand `lifetime` / `censoring` applying to both groups.
inline scenario_config scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw error(errc::schema_error, "config: top level must be an object");
  scenario_config cfg;
  cfg.n0 = static_cast<std::size_t>(detail::json_number(j, "n0"));
  cfg.n1 = static_cast<std::size_t>(detail::json_number(j, "n1"));
  auto pick = [&](const char* specific, const char* shared) -> const nlohmann::json* {
    if (j.contains(specific)) return &j[specific];
    if (j.contains(shared)) return &j[shared];
    throw error(errc::schema_error,
                std::string("config: missing '") + specific + "' (or shared '" + shared + "')");
  };
  cfg.lifetime0 = lifetime_from_json(*pick("lifetime0", "lifetime"));
  cfg.lifetime1 = lifetime_from_json(*pick("lifetime1", "lifetime"));
  cfg.censoring0 = censoring_from_json(*pick("censoring0", "censoring"));
  cfg.censoring1 = censoring_from_json(*pick("censoring1", "censoring"));
  if (!j.contains("methods") || !j["methods"].is_array() || j["methods"].empty())
    throw error(errc::schema_error, "config: 'methods' must be a non-empty array");
  for (const auto& m : j["methods"]) {
    if (!m.is_string()) throw error(errc::schema_error, "config: methods must be strings");
    cfg.methods.push_back(m.get<std::string>());
  }
  if (j.contains("replications"))
    cfg.replications = static_cast<std::int64_t>(detail::json_number(j, "replications"));
  if (j.contains("permutations"))
    cfg.permutations = static_cast<std::int64_t>(detail::json_number(j, "permutations"));
  if (j.contains("alpha")) cfg.alpha = detail::json_number(j, "alpha");
  if (j.contains("seed")) cfg.seed = static_cast<std::uint64_t>(detail::json_number(j, "seed"));
  return cfg;
}

inline scenario_config read_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::file_not_found, "cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::config_parse, path + ": " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace survdiff
