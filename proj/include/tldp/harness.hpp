#pragma once

// Seeded replications of the pricing simulation, sweeps over experiment
// axes, and CSV output.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tldp/environments.hpp"
#include "tldp/oracle.hpp"
#include "tldp/policy.hpp"

namespace tldp {

enum class PolicyKind { tldp, target_only };

PolicyKind parse_policy(std::string_view name);
std::string to_string(PolicyKind kind);

inline constexpr std::int64_t kCurveStride = 100;

struct ExperimentSpec {
  std::string scenario = "s1c1";
  PolicyKind policy = PolicyKind::tldp;
  std::int64_t n_q = 10000;
  // Unset means 2 n_Q.
  std::optional<std::int64_t> n_p;
  double gamma = 1.0;
  double kappa = 0.6;
  double c_i = 1.0;
  double c_r = 0.25;
  std::optional<double> r_tilde_override;
  int replications = 20;
  std::uint64_t base_seed = 1;

  // Source size actually used; target_only forces 0.
  std::int64_t effective_n_p() const;
  PolicyConfig policy_config() const;
  std::string label() const;
  void validate() const;
};

// Called after each observe() with the policy state, covariate, selection
// and realized revenue.
using StepHook = std::function<void(const TldpPolicy&, std::span<const double>,
                                    const Selection&, double)>;

// Source generation, then n_Q steps of covariate, price, regret, revenue.
// Deterministic in (spec, seed).
RegretTrace run_episode(const ExperimentSpec& spec, std::uint64_t seed,
                        const StepHook& hook = {});

struct CurvePoint {
  std::int64_t t = 0;
  double mean_cum_regret = 0.0;
};

struct RunResult {
  ExperimentSpec spec;
  std::vector<std::uint64_t> seeds;
  std::vector<double> final_regrets;
  double mean = 0.0;
  double sd = 0.0;
  std::vector<CurvePoint> curve;
};

// Steps at which the mean cumulative-regret curve is recorded: multiples of
// the stride plus n_Q itself.
std::vector<std::int64_t> curve_steps(std::int64_t n_q);

// Runs replications with seeds base_seed + i. threads == 0 picks the
// hardware concurrency; results do not depend on the thread count.
RunResult run_experiment(const ExperimentSpec& spec, unsigned threads = 0);

// Writes <base>.summary.csv (one row per result), <base>.reps.csv
// (per-replication final regrets) and the curve file(s): <base>.curve.csv
// for a single result, <base>.curve.<k>.csv for result k otherwise.
void write_csv(std::span<const RunResult> results,
               const std::filesystem::path& base);

inline constexpr const char* kSummaryHeader =
    "scenario,policy,n_Q,n_P,gamma,kappa,C_I,C_r,replications,mean_regret,sd_regret";

struct SummaryRow {
  std::string scenario;
  std::string policy;
  std::int64_t n_q = 0;
  std::int64_t n_p = 0;
  double gamma = 0.0;
  double kappa = 0.0;
  double c_i = 0.0;
  double c_r = 0.0;
  int replications = 0;
  double mean_regret = 0.0;
  double sd_regret = 0.0;
};

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path);

enum class Axis { n_p, n_q, gamma, kappa, c_i, c_r };

Axis parse_axis(std::string_view name);
std::string to_string(Axis axis);
double axis_value(const SummaryRow& row, Axis axis);
std::vector<double> default_grid(Axis axis);
std::vector<ExperimentSpec> sweep_specs(const ExperimentSpec& base, Axis axis,
                                        std::span<const double> values);

// `key = value` lines; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> read_config_file(
    const std::filesystem::path& path);
std::map<std::string, std::string> parse_config(std::string_view text);

// Applies the experiment keys (scenario, policy, n_q, n_p, gamma, kappa,
// c_i, c_r, r_tilde, reps, seed); other keys are left to the caller.
void apply_config(ExperimentSpec& spec,
                  const std::map<std::string, std::string>& kv);

std::vector<double> parse_list(std::string_view text);

}  // namespace tldp
