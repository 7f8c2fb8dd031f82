#include "tldp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "tldp/stats.hpp"

namespace tldp {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for '" + std::string(key) + "': '" + text + "'");
  }
}

std::int64_t to_int(std::string_view key, const std::string& text) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" + text + "'");
  }
  return v;
}

}  // namespace

PolicyKind parse_policy(std::string_view name) {
  if (name == "tldp") return PolicyKind::tldp;
  if (name == "target_only") return PolicyKind::target_only;
  throw ConfigError("unknown policy '" + std::string(name) +
                    "' (expected tldp or target_only)");
}

std::string to_string(PolicyKind kind) {
  return kind == PolicyKind::tldp ? "tldp" : "target_only";
}

std::int64_t ExperimentSpec::effective_n_p() const {
  if (policy == PolicyKind::target_only) return 0;
  return n_p.value_or(2 * n_q);
}

PolicyConfig ExperimentSpec::policy_config() const {
  PolicyConfig cfg;
  cfg.d = scenario_by_id(scenario).d;
  cfg.n_q = n_q;
  cfg.n_p = effective_n_p();
  cfg.kappa = kappa;
  cfg.gamma = gamma;
  cfg.c_i = c_i;
  cfg.c_r = c_r;
  cfg.r_tilde_override = r_tilde_override;
  return cfg;
}

std::string ExperimentSpec::label() const {
  return fmt::format("{}/{}/nQ={}/nP={}/gamma={}/kappa={}/CI={}/Cr={}", scenario,
                     to_string(policy), n_q, effective_n_p(), gamma, kappa, c_i, c_r);
}

void ExperimentSpec::validate() const {
  const auto& sc = scenario_by_id(scenario);
  if (replications < 1) throw ConfigError("replications must be at least 1");
  policy_config().validate();
  sc.source_sampler(gamma, kappa).validate();
}

RegretTrace run_episode(const ExperimentSpec& spec, std::uint64_t seed,
                        const StepHook& hook) {
  spec.validate();
  const Scenario& sc = scenario_by_id(spec.scenario);
  const PolicyConfig cfg = spec.policy_config();

  Rng source_rng(seed, Stream::source_data);
  Rng covariate_rng(seed, Stream::target_covariates);
  Rng policy_rng(seed, Stream::policy);
  Rng noise_rng(seed, Stream::reward_noise);

  SourceDataset src = generate_source_dataset(
      cfg.n_p, sc.source_sampler(spec.gamma, spec.kappa), sc.model, sc.noise,
      source_rng);
  TldpPolicy policy(cfg, std::move(src));

  RegretTrace trace;
  trace.seed = seed;
  trace.config_id = spec.label();
  trace.per_step.reserve(static_cast<std::size_t>(spec.n_q));
  trace.cumulative.reserve(static_cast<std::size_t>(spec.n_q));
  for (std::int64_t t = 1; t <= spec.n_q; ++t) {
    const Point x = sample_target_covariate(sc.d, covariate_rng);
    const Selection sel = policy.select_price(x, policy_rng);
    trace.push(instantaneous_regret(sc.model, x, sel.price));
    const double y = sample_reward(sc.model, sc.noise, x, sel.price, noise_rng);
    policy.observe(sel.ball, y);
    if (hook) hook(policy, x, sel, y);
  }
  return trace;
}

std::vector<std::int64_t> curve_steps(std::int64_t n_q) {
  std::vector<std::int64_t> steps;
  for (std::int64_t t = kCurveStride; t <= n_q; t += kCurveStride) steps.push_back(t);
  if (steps.empty() || steps.back() != n_q) steps.push_back(n_q);
  return steps;
}

RunResult run_experiment(const ExperimentSpec& spec, unsigned threads) {
  spec.validate();
  const auto reps = static_cast<std::size_t>(spec.replications);
  const auto steps = curve_steps(spec.n_q);

  RunResult result;
  result.spec = spec;
  result.seeds.resize(reps);
  result.final_regrets.resize(reps);
  std::vector<std::vector<double>> curves(reps);

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(reps);
  auto worker = [&] {
    for (std::size_t i = next++; i < reps; i = next++) {
      try {
        const std::uint64_t seed = spec.base_seed + i;
        const RegretTrace trace = run_episode(spec, seed);
        result.seeds[i] = seed;
        result.final_regrets[i] = trace.total();
        curves[i].reserve(steps.size());
        for (auto t : steps) curves[i].push_back(trace.cumulative[t - 1]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  result.mean = stats::mean(result.final_regrets);
  result.sd = stats::sd(result.final_regrets);
  result.curve.reserve(steps.size());
  for (std::size_t k = 0; k < steps.size(); ++k) {
    double s = 0.0;
    for (const auto& c : curves) s += c[k];
    result.curve.push_back({steps[k], s / static_cast<double>(reps)});
  }
  return result;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::filesystem::path with_suffix(const std::filesystem::path& base,
                                  const std::string& suffix) {
  return std::filesystem::path(base.string() + suffix);
}

}  // namespace

void write_csv(std::span<const RunResult> results,
               const std::filesystem::path& base) {
  const auto summary_path = with_suffix(base, ".summary.csv");
  auto summary = open_for_write(summary_path);
  summary << kSummaryHeader << '\n';
  for (const auto& r : results) {
    const auto& s = r.spec;
    summary << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", s.scenario,
                           to_string(s.policy), s.n_q, s.effective_n_p(), s.gamma,
                           s.kappa, s.c_i, s.c_r, s.replications, r.mean, r.sd);
  }
  finish(summary, summary_path);

  const auto reps_path = with_suffix(base, ".reps.csv");
  auto reps = open_for_write(reps_path);
  reps << "row,replication,seed,final_regret\n";
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k];
    for (std::size_t i = 0; i < r.final_regrets.size(); ++i) {
      reps << fmt::format("{},{},{},{}\n", k, i, r.seeds[i], r.final_regrets[i]);
    }
  }
  finish(reps, reps_path);

  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto curve_path =
        results.size() == 1 ? with_suffix(base, ".curve.csv")
                            : with_suffix(base, fmt::format(".curve.{}.csv", k));
    auto curve = open_for_write(curve_path);
    curve << "t,mean_cum_regret\n";
    for (const auto& pt : results[k].curve) {
      curve << fmt::format("{},{}\n", pt.t, pt.mean_cum_regret);
    }
    finish(curve, curve_path);
  }
}

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || trim(line) != kSummaryHeader) {
    throw std::runtime_error("'" + path.string() + "' lacks the summary header");
  }
  std::vector<SummaryRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 11) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected 11 fields");
    }
    SummaryRow r;
    r.scenario = f[0];
    r.policy = f[1];
    r.n_q = to_int("n_Q", f[2]);
    r.n_p = to_int("n_P", f[3]);
    r.gamma = to_double("gamma", f[4]);
    r.kappa = to_double("kappa", f[5]);
    r.c_i = to_double("C_I", f[6]);
    r.c_r = to_double("C_r", f[7]);
    r.replications = static_cast<int>(to_int("replications", f[8]));
    r.mean_regret = to_double("mean_regret", f[9]);
    r.sd_regret = to_double("sd_regret", f[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

Axis parse_axis(std::string_view name) {
  if (name == "n_p" || name == "n-p" || name == "n_P") return Axis::n_p;
  if (name == "n_q" || name == "n-q" || name == "n_Q") return Axis::n_q;
  if (name == "gamma") return Axis::gamma;
  if (name == "kappa") return Axis::kappa;
  if (name == "c_i" || name == "c-i" || name == "C_I") return Axis::c_i;
  if (name == "c_r" || name == "c-r" || name == "C_r") return Axis::c_r;
  throw ConfigError("unknown axis '" + std::string(name) +
                    "' (expected n_p, n_q, gamma, kappa, c_i or c_r)");
}

std::string to_string(Axis axis) {
  switch (axis) {
    case Axis::n_p: return "n_P";
    case Axis::n_q: return "n_Q";
    case Axis::gamma: return "gamma";
    case Axis::kappa: return "kappa";
    case Axis::c_i: return "C_I";
    case Axis::c_r: return "C_r";
  }
  return "?";
}

double axis_value(const SummaryRow& row, Axis axis) {
  switch (axis) {
    case Axis::n_p: return static_cast<double>(row.n_p);
    case Axis::n_q: return static_cast<double>(row.n_q);
    case Axis::gamma: return row.gamma;
    case Axis::kappa: return row.kappa;
    case Axis::c_i: return row.c_i;
    case Axis::c_r: return row.c_r;
  }
  return 0.0;
}

std::vector<double> default_grid(Axis axis) {
  switch (axis) {
    case Axis::n_p: return {0, 10000, 20000, 30000, 40000};
    case Axis::n_q: return {10000, 20000, 30000, 40000, 50000};
    case Axis::gamma: return {0.5, 1.0, 1.5, 2.0, 2.5};
    case Axis::kappa: return {0.2, 0.4, 0.6, 0.8, 1.0};
    case Axis::c_i: return {0.5, 1.0, 2.0};
    case Axis::c_r: return {0.125, 0.25, 0.5};
  }
  return {};
}

std::vector<ExperimentSpec> sweep_specs(const ExperimentSpec& base, Axis axis,
                                        std::span<const double> values) {
  if (values.empty()) throw ConfigError("sweep grid is empty");
  std::vector<ExperimentSpec> out;
  for (double v : values) {
    ExperimentSpec s = base;
    switch (axis) {
      case Axis::n_p:
        if (v < 0 || v != std::floor(v)) throw ConfigError("n_P grid values must be nonnegative integers");
        s.n_p = static_cast<std::int64_t>(v);
        break;
      case Axis::n_q:
        if (v < 3 || v != std::floor(v)) throw ConfigError("n_Q grid values must be integers >= 3");
        s.n_q = static_cast<std::int64_t>(v);
        break;
      case Axis::gamma: s.gamma = v; break;
      case Axis::kappa: s.kappa = v; break;
      case Axis::c_i: s.c_i = v; break;
      case Axis::c_r: s.c_r = v; break;
    }
    s.validate();
    out.push_back(std::move(s));
  }
  return out;
}

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::size_t lineno = 0;
  for (const auto& raw : split(text, '\n')) {
    ++lineno;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    }
    kv[std::move(key)] = std::move(value);
  }
  return kv;
}

std::map<std::string, std::string> read_config_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_config(ExperimentSpec& spec,
                  const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "scenario") {
      scenario_by_id(value);
      spec.scenario = value;
    } else if (key == "policy") {
      spec.policy = parse_policy(value);
    } else if (key == "n_q") {
      spec.n_q = to_int(key, value);
    } else if (key == "n_p") {
      if (value == "auto") spec.n_p.reset();
      else spec.n_p = to_int(key, value);
    } else if (key == "gamma") {
      spec.gamma = to_double(key, value);
    } else if (key == "kappa") {
      spec.kappa = to_double(key, value);
    } else if (key == "c_i") {
      spec.c_i = to_double(key, value);
    } else if (key == "c_r") {
      spec.c_r = to_double(key, value);
    } else if (key == "r_tilde") {
      spec.r_tilde_override = to_double(key, value);
    } else if (key == "reps") {
      spec.replications = static_cast<int>(to_int(key, value));
    } else if (key == "seed") {
      spec.base_seed = static_cast<std::uint64_t>(to_int(key, value));
    }
  }
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) continue;
    out.push_back(to_double("values", item));
  }
  return out;
}

}  // namespace tldp
