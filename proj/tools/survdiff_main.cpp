// survdiff — two-sample distribution-equality testing for right-censored
// survival data.
//
// Subcommands:
//   test       run permutation-calibrated tests on a dataset CSV
//   simulate   run a simulation study (built-in scenario or JSON config)
//   curves     draw product-limit survival curves for a scenario
//   scenarios  list built-in scenarios and registered methods
//
// Exit status: 0 on success, 2 for input/configuration problems, 3 when the
// observed data admits no meaningful statistic (degenerate layout).

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "survdiff/survdiff.hpp"

namespace {

using namespace survdiff;

struct test_options {
  std::string input;
  std::vector<std::string> methods;
  std::int64_t permutations = 1000;
  std::uint64_t seed = default_study_seed;
  bool no_exact = false;
  bool json = false;
};

struct simulate_options {
  std::string builtin;
  std::string config;
  std::vector<std::string> methods;
  std::int64_t replications = -1;
  std::int64_t permutations = -1;
  std::int64_t n = -1;
  double alpha = -1.0;
  bool seed_set = false;
  std::uint64_t seed = 0;
  std::string summary_path;
  std::string results_path;
};

struct curves_options {
  std::string builtin;
  std::string config;
  std::int64_t n = 5000;
  std::uint64_t seed = default_study_seed;
  std::string csv_path;
  std::string svg_path;
};

struct scenarios_options {
  bool list = false;
  bool list_methods = false;
  std::string show;
};

scenario_config load_scenario(const std::string& builtin, const std::string& config,
                              std::string* name_out) {
  if (builtin.empty() == config.empty())
    throw error(errc::invalid_parameter, "pass exactly one of --builtin or --config");
  if (!builtin.empty()) {
    const named_scenario& s = find_builtin_scenario(builtin);
    if (name_out) *name_out = s.name;
    return s.config;
  }
  if (name_out) *name_out = std::filesystem::path(config).stem().string();
  return read_scenario_config(config);
}

void run_test(const test_options& opts) {
  const two_sample_data data = read_dataset_csv(opts.input);
  const pooled_layout pooled = pool_samples(data);

  nlohmann::json results = nlohmann::json::array();
  std::vector<std::string> lines;
  for (std::size_t m = 0; m < opts.methods.size(); ++m) {
    const std::unique_ptr<two_sample_statistic> stat = make_method(opts.methods[m]);
    permutation_plan plan;
    plan.replications = opts.permutations;
    plan.seed = derive_seed(opts.seed, {static_cast<std::uint64_t>(m)});
    plan.allow_exact = !opts.no_exact;
    const test_result result = run_permutation_test(*stat, pooled, plan);

    const bool rank_family = dynamic_cast<const logrank_statistic*>(stat.get()) != nullptr;
    nlohmann::json j = test_result_to_json(result);
    if (rank_family) j["chisq1_p"] = chisq1_upper_tail(result.statistic);
    results.push_back(j);

    std::ostringstream line;
    line << result.method << "  statistic=" << detail::format_number(result.statistic);
    if (stat->uses_sample_size_scaling())
      line << "  scaled=" << detail::format_number(result.scaled);
    line << "  p=" << detail::format_number(result.p_value) << "  R=" << result.replications
         << (result.exact ? "  exact=yes" : "  exact=no");
    if (result.degenerate > 0) line << "  degenerate=" << result.degenerate;
    if (rank_family)
      line << "  chisq1_p=" << detail::format_number(chisq1_upper_tail(result.statistic));
    lines.push_back(line.str());
  }

  if (opts.json) {
    nlohmann::json root;
    root["input"] = opts.input;
    root["n0"] = pooled.n0;
    root["n1"] = pooled.n1;
    root["permutations"] = opts.permutations;
    root["seed"] = opts.seed;
    root["results"] = results;
    std::cout << root.dump(2) << '\n';
  } else {
    std::cout << "dataset: " << opts.input << "  (n0=" << pooled.n0 << ", n1=" << pooled.n1
              << ")\n";
    for (const std::string& line : lines) std::cout << line << '\n';
  }
}

void print_summary_table(const std::string& name, const scenario_config& cfg,
                         const study_result& res) {
  std::cout << "scenario: " << name << '\n';
  std::cout << "n0=" << cfg.n0 << "  n1=" << cfg.n1 << "  replications=" << res.replications
            << "  permutations=" << cfg.permutations << "  alpha="
            << detail::format_number(res.alpha) << "  seed=" << res.seed << "\n\n";
  std::size_t width = 6;
  for (const method_summary& s : res.summaries) width = std::max(width, s.method.size());
  std::cout << std::left << std::setw(static_cast<int>(width + 2)) << "method" << std::right
            << std::setw(8) << "reject" << std::setw(9) << "mean_p" << std::setw(9) << "sd_p"
            << std::setw(12) << "degenerate" << '\n';
  std::cout << std::string(width + 2 + 8 + 9 + 9 + 12, '-') << '\n';
  for (const method_summary& s : res.summaries) {
    std::cout << std::left << std::setw(static_cast<int>(width + 2)) << s.method << std::right
              << std::fixed << std::setprecision(3) << std::setw(8) << s.rejection_rate
              << std::setw(9) << s.mean_p << std::setw(9) << s.sd_p << std::defaultfloat
              << std::setw(12) << s.degenerate << '\n';
  }
}

void run_simulate(const simulate_options& opts) {
  std::string name;
  scenario_config cfg = load_scenario(opts.builtin, opts.config, &name);
  if (!opts.methods.empty()) cfg.methods = opts.methods;
  if (opts.replications >= 0) cfg.replications = opts.replications;
  if (opts.permutations >= 0) cfg.permutations = opts.permutations;
  if (opts.n >= 0) cfg.n0 = cfg.n1 = static_cast<std::size_t>(opts.n);
  if (opts.alpha >= 0.0) cfg.alpha = opts.alpha;
  if (opts.seed_set) cfg.seed = opts.seed;

  const study_result res = run_study(cfg);
  print_summary_table(name, cfg, res);
  if (!opts.summary_path.empty()) {
    write_summary_csv(opts.summary_path, res);
    std::cout << "\nsummary written to " << opts.summary_path << '\n';
  }
  if (!opts.results_path.empty()) {
    write_long_csv(opts.results_path, res);
    std::cout << "per-replication p-values written to " << opts.results_path << '\n';
  }
}

void run_curves(const curves_options& opts) {
  std::string name;
  scenario_config cfg = load_scenario(opts.builtin, opts.config, &name);
  if (opts.n < 2) throw error(errc::invalid_parameter, "curves need --n of at least 2");
  cfg.n0 = cfg.n1 = static_cast<std::size_t>(opts.n);

  const censoring_model resolved0 = resolve_censoring(cfg.censoring0, cfg.lifetime0);
  const censoring_model resolved1 = resolve_censoring(cfg.censoring1, cfg.lifetime0);
  std::mt19937_64 engine = make_engine(derive_seed(opts.seed, {3}));
  const two_sample_data data = simulate_dataset(cfg, resolved0, resolved1, engine);

  std::vector<named_curve> curves;
  curves.emplace_back("group0", km_survival(order_with_censoring(data.group0)));
  curves.emplace_back("group1", km_survival(order_with_censoring(data.group1)));

  if (!opts.csv_path.empty()) {
    write_curve_csv(opts.csv_path, curves);
    std::cout << "curve table written to " << opts.csv_path << '\n';
  }
  if (!opts.svg_path.empty()) {
    write_curve_svg(opts.svg_path, "Survival curves: " + name, curves);
    std::cout << "curve plot written to " << opts.svg_path << '\n';
  }
  if (opts.csv_path.empty() && opts.svg_path.empty()) {
    std::cout << "group,t,survival\n";
    for (const named_curve& c : curves) {
      if (c.second.knots.empty() || c.second.knots.front() > 0.0)
        std::cout << c.first << ",0," << detail::csv_number(c.second.initial_value) << '\n';
      for (std::size_t i = 0; i < c.second.knots.size(); ++i)
        std::cout << c.first << ',' << detail::csv_number(c.second.knots[i]) << ','
                  << detail::csv_number(c.second.values[i]) << '\n';
    }
  }
}

void run_scenarios(const scenarios_options& opts) {
  if (!opts.show.empty()) {
    const named_scenario& s = find_builtin_scenario(opts.show);
    nlohmann::json j;
    j["name"] = s.name;
    j["description"] = s.description;
    j["config"] = scenario_to_json(s.config);
    std::cout << j.dump(2) << '\n';
    return;
  }
  if (opts.list_methods) {
    for (const std::string& m : registered_methods()) std::cout << m << '\n';
    return;
  }
  // default: list scenarios
  for (const named_scenario& s : builtin_scenarios())
    std::cout << std::left << std::setw(28) << s.name << "  " << s.description << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sample distribution-equality tests for right-censored survival data"};
  app.require_subcommand(1);

  test_options topts;
  CLI::App* test_cmd = app.add_subcommand(
      "test", "Run permutation-calibrated two-sample tests on a dataset CSV");
  test_cmd->add_option("--input", topts.input, "Dataset CSV with header time,event,group")
      ->required();
  test_cmd->add_option("--method", topts.methods,
                       "Method descriptor (repeatable); default energy:alpha=1");
  test_cmd->add_option("--permutations", topts.permutations,
                       "Monte Carlo label permutations per test [1000]");
  test_cmd->add_option("--seed", topts.seed, "Master seed; each method draws its own stream");
  test_cmd->add_flag("--no-exact", topts.no_exact,
                     "Never enumerate all label splits, even when cheap");
  test_cmd->add_flag("--json", topts.json, "Emit results as JSON");
  test_cmd->callback([&] {
    if (topts.methods.empty()) topts.methods = {"energy"};
    run_test(topts);
  });

  simulate_options sopts;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Run a simulation study and summarize rejection rates");
  sim_cmd->add_option("--builtin", sopts.builtin, "Name of a built-in scenario");
  sim_cmd->add_option("--config", sopts.config, "Scenario configuration JSON file");
  sim_cmd->add_option("--method", sopts.methods,
                      "Replace the scenario's method list (repeatable)");
  sim_cmd->add_option("--replications", sopts.replications, "Override simulated datasets");
  sim_cmd->add_option("--permutations", sopts.permutations,
                      "Override permutations per test");
  sim_cmd->add_option("--n", sopts.n, "Override both group sizes");
  sim_cmd->add_option("--alpha", sopts.alpha, "Override the rejection level");
  CLI::Option* seed_opt = sim_cmd->add_option("--seed", sopts.seed, "Override the study seed");
  sim_cmd->add_option("--summary", sopts.summary_path, "Write the summary table CSV here");
  sim_cmd->add_option("--results", sopts.results_path,
                      "Write per-replication p-values CSV here");
  sim_cmd->callback([&] {
    sopts.seed_set = seed_opt->count() > 0;
    run_simulate(sopts);
  });

  curves_options copts;
  CLI::App* curves_cmd = app.add_subcommand(
      "curves", "Simulate one dataset of a scenario and emit product-limit curves");
  curves_cmd->add_option("--builtin", copts.builtin, "Name of a built-in scenario");
  curves_cmd->add_option("--config", copts.config, "Scenario configuration JSON file");
  curves_cmd->add_option("--n", copts.n, "Subjects per group to simulate [5000]");
  curves_cmd->add_option("--seed", copts.seed, "Seed for the simulated dataset");
  curves_cmd->add_option("--csv", copts.csv_path, "Write the curve table CSV here");
  curves_cmd->add_option("--svg", copts.svg_path, "Write an SVG plot here");
  curves_cmd->callback([&] { run_curves(copts); });

  scenarios_options xopts;
  CLI::App* scen_cmd =
      app.add_subcommand("scenarios", "List built-in scenarios and registered methods");
  scen_cmd->add_flag("--list", xopts.list, "List scenario names and descriptions (default)");
  scen_cmd->add_flag("--list-methods", xopts.list_methods, "List registered method descriptors");
  scen_cmd->add_option("--show", xopts.show, "Print one scenario's configuration as JSON");
  scen_cmd->callback([&] { run_scenarios(xopts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const survdiff::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return survdiff::is_degenerate_error(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
