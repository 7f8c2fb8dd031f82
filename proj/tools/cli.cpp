#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tldp/harness.hpp"
#include "tldp/invariants.hpp"
#include "tldp/svg_plot.hpp"

namespace tldp {

namespace {

// Flags that map one-to-one onto config-file keys.
struct KeyedFlags {
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void add(CLI::App& app, const std::string& flag, const std::string& key,
           const std::string& help) {
    options.emplace_back(key, app.add_option(flag, values[key], help));
  }

  std::map<std::string, std::string> given() const {
    std::map<std::string, std::string> kv;
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) kv[key] = values.at(key);
    }
    return kv;
  }
};

void add_experiment_flags(CLI::App& app, KeyedFlags& flags) {
  flags.add(app, "--scenario", "scenario", "s1c1, s1c2, s2c1 or s2c2 (default s1c1)");
  flags.add(app, "--policy", "policy", "tldp or target_only (default tldp)");
  flags.add(app, "--n-q", "n_q", "target horizon (default 10000)");
  flags.add(app, "--n-p", "n_p", "source size, or 'auto' for 2 n_Q (default auto)");
  flags.add(app, "--gamma", "gamma", "transfer exponent (default 1.0)");
  flags.add(app, "--kappa", "kappa", "exploration coefficient (default 0.6)");
  flags.add(app, "--c-i", "c_i", "index constant C_I (default 1)");
  flags.add(app, "--c-r", "c_r", "radius constant C_r (default 0.25)");
  flags.add(app, "--r-tilde", "r_tilde", "override the smallest exploration radius");
  flags.add(app, "--reps", "reps", "replications (default 20)");
  flags.add(app, "--seed", "seed", "base seed (default 1)");
  flags.add(app, "--out", "out", "output path prefix (default tldp_out)");
}

struct Resolved {
  ExperimentSpec spec;
  std::map<std::string, std::string> kv;
};

Resolved resolve(const std::string& config_path, const KeyedFlags& flags) {
  Resolved r;
  if (!config_path.empty()) r.kv = read_config_file(config_path);
  for (const auto& [k, v] : flags.given()) r.kv[k] = v;
  apply_config(r.spec, r.kv);
  r.spec.validate();
  return r;
}

std::string out_prefix(const Resolved& r) {
  const auto it = r.kv.find("out");
  return it == r.kv.end() ? "tldp_out" : it->second;
}

void report(std::ostream& out, const RunResult& res) {
  out << fmt::format("{}  reps={}  mean={:.4f}  sd={:.4f}\n", res.spec.label(),
                     res.spec.replications, res.mean, res.sd);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Transfer-learning dynamic pricing simulator"};
  app.require_subcommand(1);

  unsigned threads = 0;

  auto* run = app.add_subcommand("run", "run one experiment");
  KeyedFlags run_flags;
  std::string run_config;
  run->add_option("--config", run_config, "key = value config file");
  run->add_option("--threads", threads, "worker threads (0 = all cores)");
  add_experiment_flags(*run, run_flags);

  auto* sweep = app.add_subcommand("sweep", "run a grid over one axis");
  KeyedFlags sweep_flags;
  std::string sweep_config;
  sweep->add_option("--config", sweep_config, "key = value config file");
  sweep->add_option("--threads", threads, "worker threads (0 = all cores)");
  add_experiment_flags(*sweep, sweep_flags);
  sweep_flags.add(*sweep, "--axis", "axis", "n_p, n_q, gamma, kappa, c_i or c_r");
  sweep_flags.add(*sweep, "--values", "values", "comma-separated grid (default: the standard grid)");

  auto* plot = app.add_subcommand("plot", "render summary CSVs to SVG");
  std::vector<std::string> plot_inputs;
  std::string plot_axis;
  std::string plot_out = "regret.svg";
  std::string plot_title;
  plot->add_option("--input", plot_inputs, "summary CSV file(s)")->required();
  plot->add_option("--axis", plot_axis, "x axis column")->required();
  plot->add_option("--out", plot_out, "SVG path");
  plot->add_option("--title", plot_title, "chart title");

  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
  InvariantSuiteOptions suite;
  selftest->add_option("--episodes", suite.episodes, "episodes per (scenario, n_P)");
  selftest->add_option("--n-q", suite.n_q, "horizon per episode");
  selftest->add_option("--seed", suite.base_seed, "base seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      const auto r = resolve(run_config, run_flags);
      const RunResult res = run_experiment(r.spec, threads);
      const std::vector<RunResult> all{res};
      write_csv(all, out_prefix(r));
      report(out, res);
      return kExitOk;
    }
    if (sweep->parsed()) {
      const auto r = resolve(sweep_config, sweep_flags);
      const auto axis_it = r.kv.find("axis");
      if (axis_it == r.kv.end()) throw ConfigError("sweep needs --axis");
      const Axis axis = parse_axis(axis_it->second);
      std::vector<double> grid = default_grid(axis);
      if (const auto v = r.kv.find("values"); v != r.kv.end()) grid = parse_list(v->second);
      const auto specs = sweep_specs(r.spec, axis, grid);
      std::vector<RunResult> results;
      for (const auto& s : specs) {
        results.push_back(run_experiment(s, threads));
        report(out, results.back());
      }
      write_csv(results, out_prefix(r));
      return kExitOk;
    }
    if (plot->parsed()) {
      const Axis axis = parse_axis(plot_axis);
      std::vector<SummaryRow> rows;
      for (const auto& in : plot_inputs) {
        auto part = read_summary_csv(in);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      const auto series = series_from_summary(rows, axis);
      PlotLabels labels;
      labels.title = plot_title.empty() ? "Regret vs " + to_string(axis) : plot_title;
      labels.x_label = to_string(axis);
      std::ofstream svg(plot_out, std::ios::binary | std::ios::trunc);
      if (!svg) throw std::runtime_error("cannot open '" + plot_out + "' for writing");
      svg << render_svg(series, labels);
      if (!svg) throw std::runtime_error("failed writing '" + plot_out + "'");
      out << "wrote " << plot_out << "\n";
      return kExitOk;
    }
    if (selftest->parsed()) {
      if (suite.episodes < 1 || suite.n_q < 3) throw ConfigError("selftest needs episodes >= 1 and n_q >= 3");
      const auto start = std::chrono::steady_clock::now();
      const auto rep = run_invariant_suite(suite);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      for (const auto& f : rep.failures) err << "FAIL " << f << "\n";
      out << fmt::format("selftest: {} episodes, {} steps, {} probes, {} failures, {:.1f}s\n",
                         rep.episodes, rep.steps, rep.probes, rep.failures.size(), secs);
      return rep.ok() ? kExitOk : kExitRuntime;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace tldp
