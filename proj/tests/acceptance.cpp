// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "hp_oracle.hpp"
#include "tldp/harness.hpp"
#include "tldp/invariants.hpp"
#include "tldp/stats.hpp"

using namespace tldp;
using tldp::test::hp;
using tldp::test::rel_err;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double time_limit_s;  // 0 = no limit
  std::function<Verdict()> body;
};

ExperimentSpec s1c1_spec() {
  ExperimentSpec s;
  s.scenario = "s1c1";
  s.n_q = 10000;
  s.gamma = 1.0;
  s.kappa = 0.6;
  s.replications = 20;
  s.base_seed = 1;
  return s;
}

std::vector<double> sweep_means(const ExperimentSpec& base, Axis axis) {
  std::vector<double> means;
  for (const auto& s : sweep_specs(base, axis, default_grid(axis))) {
    means.push_back(run_experiment(s).mean);
  }
  return means;
}

// Adjacent pairs that break the requested direction.
int violations(const std::vector<double>& v, bool increasing) {
  int count = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (increasing ? v[i] < v[i - 1] : v[i] > v[i - 1]) ++count;
  }
  return count;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += fmt::format("{}{:.1f}", i ? " " : "", v[i]);
  return out;
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / *lo;
}

Verdict invariant_suite() {
  const auto rep = run_invariant_suite(InvariantSuiteOptions{});
  for (const auto& f : rep.failures) std::cerr << "  " << f << "\n";
  return {rep.ok() && rep.episodes == 200,
          fmt::format("{} episodes, {} steps, {} probes, {} failures", rep.episodes,
                      rep.steps, rep.probes, rep.failures.size())};
}

Verdict head_start_equivalence() {
  ExperimentSpec with_source = s1c1_spec();
  with_source.n_q = 5000;
  with_source.n_p = 0;
  ExperimentSpec target = with_source;
  target.policy = PolicyKind::target_only;
  int identical = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto a = run_episode(with_source, seed);
    const auto b = run_episode(target, seed);
    if (a.per_step == b.per_step && a.cumulative == b.cumulative) ++identical;
  }
  return {identical == 10, fmt::format("{}/10 seeds bit-identical", identical)};
}

Verdict sublinearity() {
  ExperimentSpec s = s1c1_spec();
  s.policy = PolicyKind::target_only;
  const double r1 = run_experiment(s).mean;
  s.n_q = 20000;
  const double r2 = run_experiment(s).mean;
  const double ratio = r2 / r1;
  return {ratio <= 1.90, fmt::format("R(10000)={:.2f} R(20000)={:.2f} ratio={:.4f} (bound 1.90)",
                                     r1, r2, ratio)};
}

Verdict transfer_benefit() {
  const ExperimentSpec tldp_spec = s1c1_spec();
  ExperimentSpec target = tldp_spec;
  target.policy = PolicyKind::target_only;
  const auto a = run_experiment(tldp_spec);
  const auto b = run_experiment(target);
  const double p = stats::paired_t_test_less(a.final_regrets, b.final_regrets);
  return {a.mean < b.mean && p < 0.05,
          fmt::format("TLDP {:.2f} vs target-only {:.2f}, one-sided p={:.3g}", a.mean, b.mean, p)};
}

Verdict monotone_trends() {
  ExperimentSpec base = s1c1_spec();
  const auto by_np = sweep_means(base, Axis::n_p);
  base.n_p = 20000;
  const auto by_gamma = sweep_means(base, Axis::gamma);
  const auto by_kappa = sweep_means(base, Axis::kappa);
  const int vn = violations(by_np, false);
  const int vg = violations(by_gamma, true);
  const int vk = violations(by_kappa, false);
  return {vn <= 1 && vg <= 1 && vk <= 1,
          fmt::format("n_P [{}] {} viol; gamma [{}] {} viol; kappa [{}] {} viol", join(by_np), vn,
                      join(by_gamma), vg, join(by_kappa), vk)};
}

Verdict robustness() {
  const auto base = s1c1_spec();
  const auto by_ci = sweep_means(base, Axis::c_i);
  const auto by_cr = sweep_means(base, Axis::c_r);
  const double si = spread(by_ci);
  const double sr = spread(by_cr);
  return {si < 0.25 && sr < 0.25,
          fmt::format("C_I [{}] spread {:.1f}%; C_r [{}] spread {:.1f}% (bound 25%)", join(by_ci),
                      100 * si, join(by_cr), 100 * sr)};
}

Verdict oracle_agreement() {
  double worst_ratio = 0.0;
  int bad = 0;
  for (const auto& id : {"s1c1", "s2c1"}) {
    const auto& sc = scenario_by_id(id);
    const double tol = lipschitz_constant(sc.model) * 1e-4;
    Rng rng(2024);
    for (int i = 0; i < 10000; ++i) {
      const auto x = sample_target_covariate(sc.d, rng);
      const double gap = std::abs(optimal_price(sc.model, x).value -
                                  optimal_price_grid(sc.model, x).value);
      worst_ratio = std::max(worst_ratio, gap / tol);
      if (gap > tol) ++bad;
    }
  }
  return {bad == 0, fmt::format("2 x 10^4 covariates, worst gap {:.3f} x tolerance", worst_ratio)};
}

Verdict sampler_checks() {
  constexpr int n = 100000;
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 77;
  for (const double gamma : {0.0, 1.0, 2.5}) {
    Rng rng(seed++);
    std::vector<double> radii;
    radii.reserve(n);
    for (int i = 0; i < n; ++i) {
      const auto x = sample_source_covariate(gamma, 2, rng);
      radii.push_back(std::max(std::abs(x[0] - 0.5), std::abs(x[1] - 0.5)));
    }
    const double ks = stats::ks_statistic(radii, [gamma](double r) {
      return std::pow(std::clamp(2.0 * r, 0.0, 1.0), gamma + 2.0);
    });
    ok = ok && ks < 0.01;
    detail += fmt::format("KS(gamma={})={:.4f} ", gamma, ks);
  }
  for (const auto& id : {"s1c1", "s2c1"}) {
    const auto& sc = scenario_by_id(id);
    for (const double kappa : {0.2, 1.0}) {
      const auto cfg = sc.source_sampler(1.0, kappa);
      const auto band = cfg.band();
      Rng rng(91);
      int hits = 0;
      for (int i = 0; i < n; ++i) {
        const auto x = sample_source_covariate(cfg.gamma, sc.d, rng);
        if (band.contains(sample_source_price(x, cfg, rng))) ++hits;
      }
      const double mass = cfg.band_mass();
      const double z = (static_cast<double>(hits) / n - mass) / std::sqrt(mass * (1 - mass) / n);
      ok = ok && std::abs(z) <= 3.0;
      detail += fmt::format("{}@kappa={} z={:+.2f} ", id, kappa, z);
    }
  }
  return {ok, detail};
}

Verdict formula_values() {
  double worst = 0.0;
  const auto track = [&](double got, const hp& want) { worst = std::max(worst, rel_err(got, want)); };

  track(effective_source_size(0.0, 10000, 1.0, 2), test::hp_effective_source(0, 10000, 1, 2));
  track(effective_source_size(1.0, 10000, 0.0, 2), test::hp_effective_source(1, 10000, 0, 2));
  track(effective_source_size(0.5, 20000, 1.0, 2), test::hp_effective_source(hp("0.5"), 20000, 1, 2));

  PolicyConfig cfg;
  cfg.d = 2;
  cfg.n_q = 10000;
  cfg.n_p = 0;
  cfg.c_r = 0.25;
  track(compute_r_tilde(cfg), test::hp_r_tilde(10000, 1, 0, 0, 2, hp("0.25")));
  cfg.kappa = 1.0;
  cfg.gamma = 0.0;
  cfg.n_p = 10000;
  track(compute_r_tilde(cfg), test::hp_r_tilde(10000, 1, 10000, 0, 2, hp("0.25")));
  cfg.r_tilde_override = 0.05;
  track(compute_r_tilde(cfg), hp("0.05"));

  const hp lt = boost::multiprecision::log(hp(10000));
  const double lt_d = static_cast<double>(lt);
  track(conf(BallStats{0, 0.0, 100, 0.0}, lt_d), test::hp_conf(100, lt));
  track(conf(BallStats{0, 0.0, 100, 0.0}, 25.0), hp(1));
  const bool empty_inf = std::isinf(conf(BallStats{}, lt_d));

  track(static_cast<double>(omega(1.0, lt_d)), test::hp_omega(1, lt));
  track(static_cast<double>(omega(0.5, lt_d)), test::hp_omega(hp("0.5"), lt));
  track(static_cast<double>(omega(1.0, 1.0)), test::hp_omega(1, 1));

  // omega(0.5, ln 10^4) = 37 against n_source 100, 10 and 37.
  track(static_cast<double>(t_b_q(0.5, BallStats{100, 0.0, 0, 0.0}, lt_d)), hp(0));
  track(static_cast<double>(t_b_q(0.5, BallStats{10, 0.0, 0, 0.0}, lt_d)), hp(37));
  track(static_cast<double>(t_b_q(0.5, BallStats{37, 0.0, 0, 0.0}, lt_d)), hp(37));

  return {worst <= 1e-9 && empty_inf, fmt::format("worst relative error {:.3g}", worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "invariant suite", 120, invariant_suite},
      {2, "head-start equivalence", 60, head_start_equivalence},
      {3, "sublinear regret growth", 600, sublinearity},
      {4, "transfer benefit", 600, transfer_benefit},
      {5, "monotone trends", 2700, monotone_trends},
      {6, "robustness to constants", 1200, robustness},
      {7, "oracle agreement", 10, oracle_agreement},
      {8, "sampler distributions", 30, sampler_checks},
      {9, "formula values", 0, formula_values},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit_s == 0 || secs < c.time_limit_s;
    const bool pass = v.pass && in_time;
    if (!pass) ++failed;
    std::cout << fmt::format("[{}] criterion {}: {} - {} ({:.1f}s{})\n", pass ? "PASS" : "FAIL",
                             c.number, c.name, v.detail, secs,
                             in_time ? "" : fmt::format(", limit {:.0f}s", c.time_limit_s))
              << std::flush;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
