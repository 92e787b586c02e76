#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "survdiff/io.hpp"

using namespace survdiff;

namespace {

std::string tmp_path(const std::string& name) {
  return "/tmp/survdiff_io_" + name;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("dataset CSV round-trips exactly") {
  two_sample_data data;
  data.group0 = validate(std::vector<double>{1.25, 0.5, 2.0 / 3.0}, std::vector<int>{1, 0, 1});
  data.group1 = validate(std::vector<double>{3.0, 0.1}, std::vector<int>{0, 1});
  const std::string path = tmp_path("roundtrip.csv");
  write_dataset_csv(path, data);
  const two_sample_data back = read_dataset_csv(path);
  CHECK(back.group0.times == data.group0.times);
  CHECK(back.group0.events == data.group0.events);
  CHECK(back.group1.times == data.group1.times);
  CHECK(back.group1.events == data.group1.events);
  std::remove(path.c_str());
}

TEST_CASE("dataset CSV accepts spacing and blank lines, preserves row order") {
  const std::string path = tmp_path("spaced.csv");
  write_text(path, "time,event,group\n 1.5 , 1 , 0 \n\n2.5,0,1\n0.5,1,0\n");
  const two_sample_data data = read_dataset_csv(path);
  REQUIRE(data.group0.times == std::vector<double>{1.5, 0.5});
  REQUIRE(data.group0.events == std::vector<std::uint8_t>{1, 1});
  REQUIRE(data.group1.times == std::vector<double>{2.5});
  REQUIRE(data.group1.events == std::vector<std::uint8_t>{0});
  std::remove(path.c_str());
}

TEST_CASE("dataset CSV rejects malformed inputs with typed errors") {
  auto code_of = [](const std::string& content, const char* name) {
    const std::string path = tmp_path(name);
    write_text(path, content);
    errc code = errc::no_convergence;  // sentinel
    try {
      read_dataset_csv(path);
    } catch (const error& e) {
      code = e.code();
    }
    std::remove(path.c_str());
    return code;
  };

  try {
    read_dataset_csv("/tmp/survdiff_io_does_not_exist.csv");
    FAIL("expected file-not-found");
  } catch (const error& e) {
    CHECK(e.code() == errc::file_not_found);
  }
  CHECK(code_of("", "empty.csv") == errc::schema_error);
  CHECK(code_of("t,e,g\n1,1,0\n2,1,1\n", "header.csv") == errc::schema_error);
  CHECK(code_of("time,event,group\n1,2,0\n2,1,1\n", "event.csv") == errc::schema_error);
  CHECK(code_of("time,event,group\n1,1,3\n2,1,1\n", "group.csv") == errc::schema_error);
  CHECK(code_of("time,event,group\n1,1\n", "fields.csv") == errc::schema_error);
  CHECK(code_of("time,event,group\nabc,1,0\n2,1,1\n", "number.csv") == errc::schema_error);
  CHECK(code_of("time,event,group\n1,1,0\n", "onegroup.csv") == errc::schema_error);
  // data-level validation still applies after parsing
  CHECK(code_of("time,event,group\n-1,1,0\n2,1,1\n", "negative.csv") == errc::negative_time);
}

TEST_CASE("study outputs match golden text") {
  study_result res;
  res.methods = {"alpha", "beta"};
  res.replications = 2;
  res.alpha = 0.05;
  res.pvalues = {0.5, 1.0, 0.25, std::numeric_limits<double>::quiet_NaN()};
  method_summary s1;
  s1.method = "alpha";
  s1.rejection_rate = 0.5;
  s1.mean_p = 0.375;
  s1.sd_p = 0.125;
  s1.degenerate = 0;
  method_summary s2;
  s2.method = "beta";
  s2.rejection_rate = 0.0;
  s2.mean_p = 1.0;
  s2.sd_p = 0.0;
  s2.degenerate = 1;
  res.summaries = {s1, s2};

  const std::string long_path = tmp_path("long.csv");
  write_long_csv(long_path, res);
  CHECK(read_text(long_path) ==
        "replication,method,p_value\n"
        "0,alpha,0.5\n"
        "0,beta,1\n"
        "1,alpha,0.25\n"
        "1,beta,NA\n");
  std::remove(long_path.c_str());

  const std::string summary_path = tmp_path("summary.csv");
  write_summary_csv(summary_path, res);
  CHECK(read_text(summary_path) ==
        "method,rejection_rate,mean_p,sd_p,n_degenerate\n"
        "alpha,0.5,0.375,0.125,0\n"
        "beta,0,1,0,1\n");
  std::remove(summary_path.c_str());
}

TEST_CASE("curve CSV writes an explicit start row only when needed") {
  step_curve km;
  km.initial_value = 1.0;
  km.knots = {1.0, 2.0};
  km.values = {0.5, 0.25};
  const std::string path = tmp_path("curve.csv");
  write_curve_csv(path, {{"control", km}});
  CHECK(read_text(path) ==
        "group,t,survival\n"
        "control,0,1\n"
        "control,1,0.5\n"
        "control,2,0.25\n");

  step_curve at_zero;
  at_zero.initial_value = 1.0;
  at_zero.knots = {0.0, 1.0};
  at_zero.values = {0.75, 0.5};
  write_curve_csv(path, {{"g", at_zero}});
  CHECK(read_text(path) ==
        "group,t,survival\n"
        "g,0,0.75\n"
        "g,1,0.5\n");
  std::remove(path.c_str());
}

TEST_CASE("curve SVG holds the plot skeleton, paths, and legend") {
  step_curve a;
  a.initial_value = 1.0;
  a.knots = {1.0, 3.0};
  a.values = {0.6, 0.2};
  step_curve b;
  b.initial_value = 1.0;
  b.knots = {2.0};
  b.values = {0.4};
  const std::string path = tmp_path("curves.svg");
  write_curve_svg(path, "Survival by arm", {{"control", a}, {"treatment", b}});
  const std::string svg = read_text(path);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("Survival by arm") != std::string::npos);
  CHECK(svg.find("<path") != std::string::npos);
  CHECK(svg.find("control") != std::string::npos);
  CHECK(svg.find("treatment") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("test results serialize with every reported field") {
  test_result res;
  res.method = "energy:alpha=1";
  res.statistic = 0.5;
  res.scaled = 5.0;
  res.p_value = 0.032;
  res.replications = 1000;
  res.exact = false;
  res.degenerate = 2;
  res.seed = 99;
  const nlohmann::json j = test_result_to_json(res);
  CHECK(j["method"] == "energy:alpha=1");
  CHECK(j["statistic"] == 0.5);
  CHECK(j["scaled_statistic"] == 5.0);
  CHECK(j["p_value"] == 0.032);
  CHECK(j["R"] == 1000);
  CHECK(j["exact"] == false);
  CHECK(j["degenerate_permutations"] == 2);
  CHECK(j["seed"] == 99);
}

TEST_CASE("lifetime and censoring models round-trip through JSON") {
  const lifetime_model lifetimes[] = {
      lifetime_model{exponential_lifetime{1.5}},
      lifetime_model{gamma_lifetime{1.5, 2.0}},
      lifetime_model{lognormal_lifetime{0.0, 0.25}},
      lifetime_model{find_builtin_scenario("cure").config.lifetime1},
  };
  for (const lifetime_model& m : lifetimes) {
    const nlohmann::json j = lifetime_to_json(m);
    CHECK(lifetime_to_json(lifetime_from_json(j)).dump() == j.dump());
  }
  const censoring_model censorings[] = {
      censoring_model{no_censoring{}},
      censoring_model{exponential_censoring{0.25}},
      censoring_model{uniform_censoring{10.0}},
      censoring_model{target_rate_censoring{0.3}},
  };
  for (const censoring_model& m : censorings) {
    const nlohmann::json j = censoring_to_json(m);
    CHECK(censoring_to_json(censoring_from_json(j)).dump() == j.dump());
  }
}

TEST_CASE("scenario configurations round-trip through JSON") {
  for (const char* name : {"cure", "ph-theta2-n100", "null-lognorm0-0.25-n50-c30"}) {
    const scenario_config& cfg = find_builtin_scenario(name).config;
    const nlohmann::json j = scenario_to_json(cfg);
    const scenario_config back = scenario_from_json(j);
    CHECK(scenario_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("scenario JSON accepts shared lifetime and censoring entries") {
  const nlohmann::json j = nlohmann::json::parse(R"({
    "n0": 12, "n1": 15,
    "lifetime": {"type": "exponential", "rate": 1.0},
    "censoring": {"type": "target-rate", "target": 0.1},
    "methods": ["energy", "logrank"],
    "replications": 10,
    "permutations": 100,
    "alpha": 0.1,
    "seed": 7
  })");
  const scenario_config cfg = scenario_from_json(j);
  CHECK(cfg.n0 == 12);
  CHECK(cfg.n1 == 15);
  CHECK(lifetime_to_json(cfg.lifetime0).dump() == lifetime_to_json(cfg.lifetime1).dump());
  CHECK(censoring_to_json(cfg.censoring0).dump() == censoring_to_json(cfg.censoring1).dump());
  CHECK(cfg.methods == std::vector<std::string>{"energy", "logrank"});
  CHECK(cfg.replications == 10);
  CHECK(cfg.permutations == 100);
  CHECK(cfg.alpha == 0.1);
  CHECK(cfg.seed == 7);
}

TEST_CASE("scenario JSON rejects missing or malformed fields") {
  auto code_of = [](const char* text) {
    try {
      scenario_from_json(nlohmann::json::parse(text));
    } catch (const error& e) {
      return e.code();
    }
    return errc::no_convergence;  // sentinel
  };
  CHECK(code_of(R"({"n1": 5})") == errc::schema_error);
  CHECK(code_of(R"({"n0": 5, "n1": 5})") == errc::schema_error);  // no lifetime
  CHECK(code_of(R"({"n0": 5, "n1": 5,
                    "lifetime": {"type": "weibull"},
                    "censoring": {"type": "none"},
                    "methods": ["logrank"]})") == errc::schema_error);
  CHECK(code_of(R"({"n0": 5, "n1": 5,
                    "lifetime": {"type": "exponential", "rate": 1.0},
                    "censoring": {"type": "none"},
                    "methods": []})") == errc::schema_error);
  CHECK(code_of(R"({"n0": 5, "n1": 5,
                    "lifetime": {"type": "exponential"},
                    "censoring": {"type": "none"},
                    "methods": ["logrank"]})") == errc::schema_error);
  CHECK(code_of(R"([1, 2, 3])") == errc::schema_error);
}

TEST_CASE("scenario files surface IO and parse failures distinctly") {
  try {
    read_scenario_config("/tmp/survdiff_io_missing_config.json");
    FAIL("expected file-not-found");
  } catch (const error& e) {
    CHECK(e.code() == errc::file_not_found);
  }
  const std::string path = tmp_path("broken.json");
  write_text(path, "{ not json");
  try {
    read_scenario_config(path);
    FAIL("expected config-parse");
  } catch (const error& e) {
    CHECK(e.code() == errc::config_parse);
  }
  std::remove(path.c_str());

  const std::string good = tmp_path("good.json");
  write_text(good, R"({"n0": 8, "n1": 8,
                       "lifetime": {"type": "exponential", "rate": 1.0},
                       "censoring": {"type": "none"},
                       "methods": ["logrank"]})");
  const scenario_config cfg = read_scenario_config(good);
  CHECK(cfg.n0 == 8);
  CHECK(cfg.methods == std::vector<std::string>{"logrank"});
  std::remove(good.c_str());
}
