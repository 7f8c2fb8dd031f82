#pragma once

// Structural checks on a running policy. Each check returns an empty
// optional on success or a description of the first violation.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tldp/harness.hpp"
#include "tldp/policy.hpp"
#include "tldp/rng.hpp"

namespace tldp {

using CheckResult = std::optional<std::string>;

// Same-radius balls have centers at least one radius apart.
CheckResult check_separation(const TldpPolicy& policy);
// Only pairs involving balls with id >= first_new.
CheckResult check_separation_since(const TldpPolicy& policy, BallId first_new);

// Target counts and revenues sum to the observation totals.
CheckResult check_conservation(const TldpPolicy& policy,
                               std::int64_t observations, double revenue_sum);

// Radii are 2^-k, never below r_tilde, and children halve their parent.
CheckResult check_radius_ladder(const TldpPolicy& policy);

// conf(n) strictly decreases in n at the policy's log term.
CheckResult check_conf_monotone(const TldpPolicy& policy);

// index(B) <= C_I r(B) + pre_index(B) for every active ball.
CheckResult check_index_self_bound(const TldpPolicy& policy);

// Two evaluations of the indices give the same argmax set at x.
CheckResult check_argmax_stable(const TldpPolicy& policy,
                                std::span<const double> x);

// Union of domain slices equals union of price slices at x, probed on
// `samples` random prices; also checks each domain slice sits inside its
// price slice and that the union covers [0,1].
CheckResult check_partition(const TldpPolicy& policy, std::span<const double> x,
                            Rng& rng, int samples = 1000);

struct InvariantSuiteOptions {
  std::vector<std::string> scenarios{"s1c1", "s2c1"};
  std::vector<std::int64_t> source_sizes{0, 4000};
  int episodes = 50;
  std::int64_t n_q = 2000;
  std::uint64_t base_seed = 1;
  // Full partition and argmax probes run every this many steps (and on the
  // last step).
  std::int64_t probe_every = 50;
  int partition_samples = 1000;
};

struct InvariantReport {
  std::int64_t episodes = 0;
  std::int64_t steps = 0;
  std::int64_t probes = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Checks every invariant over one episode.
InvariantReport check_episode(const ExperimentSpec& spec, std::uint64_t seed,
                              const InvariantSuiteOptions& opts);

InvariantReport run_invariant_suite(const InvariantSuiteOptions& opts);

}  // namespace tldp
