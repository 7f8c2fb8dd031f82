#include "tldp/invariants.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace tldp {

namespace {

bool is_dyadic(double r) {
  if (!(r > 0.0) || r > 1.0) return false;
  int exp = 0;
  const double mant = std::frexp(r, &exp);
  return mant == 0.5;
}

std::vector<BallId> argmax_set(const TldpPolicy& policy,
                               std::span<const double> x) {
  const auto rel = policy.relevant(x);
  std::vector<double> v;
  double best = -kInfinity;
  for (const auto& r : rel) {
    v.push_back(policy.index(r.ball));
    best = std::max(best, v.back());
  }
  std::vector<BallId> out;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    const bool tied = std::isinf(best) ? v[i] == best
                                       : std::abs(v[i] - best) <= kTieTolerance;
    if (tied) out.push_back(rel[i].ball);
  }
  return out;
}

}  // namespace

CheckResult check_separation_since(const TldpPolicy& policy, BallId first_new) {
  for (BallId a = first_new; a < policy.size(); ++a) {
    for (BallId b = 0; b < a; ++b) {
      if (policy.radius(a) != policy.radius(b)) continue;
      const double dist = linf_distance(policy.center(a), policy.center(b));
      if (dist < policy.radius(a)) {
        return fmt::format("separation: balls {} and {} of radius {} are {} apart",
                           b, a, policy.radius(a), dist);
      }
    }
  }
  return std::nullopt;
}

CheckResult check_separation(const TldpPolicy& policy) {
  return check_separation_since(policy, 0);
}

CheckResult check_conservation(const TldpPolicy& policy,
                               std::int64_t observations, double revenue_sum) {
  std::int64_t n = 0;
  double re = 0.0;
  for (BallId id = 0; id < policy.size(); ++id) {
    n += policy.stats(id).n_target;
    re += policy.stats(id).re_target;
  }
  if (n != observations) {
    return fmt::format("conservation: target counts sum to {}, expected {}", n,
                       observations);
  }
  if (policy.t() - 1 != observations) {
    return fmt::format("conservation: t = {} after {} observations", policy.t(),
                       observations);
  }
  const double tol = 1e-9 * std::max(1.0, std::abs(revenue_sum));
  if (std::abs(re - revenue_sum) > tol) {
    return fmt::format("conservation: target revenue sums to {}, expected {}", re,
                       revenue_sum);
  }
  return std::nullopt;
}

CheckResult check_radius_ladder(const TldpPolicy& policy) {
  for (BallId id = 0; id < policy.size(); ++id) {
    const double r = policy.radius(id);
    if (!is_dyadic(r)) return fmt::format("ladder: ball {} has radius {}", id, r);
    const auto parent = policy.parent(id);
    if (!parent) {
      if (id != 0) return fmt::format("ladder: ball {} has no parent", id);
      continue;
    }
    if (r < policy.r_tilde()) {
      return fmt::format("ladder: ball {} radius {} below r_tilde {}", id, r,
                         policy.r_tilde());
    }
    if (r != policy.radius(*parent) / 2.0) {
      return fmt::format("ladder: ball {} radius {} is not half of parent {}", id,
                         r, policy.radius(*parent));
    }
    if (!contains(policy.ball(*parent), policy.center(id))) {
      return fmt::format("ladder: ball {} center lies outside parent {}", id,
                         *parent);
    }
  }
  return std::nullopt;
}

CheckResult check_conf_monotone(const TldpPolicy& policy) {
  const double lt = policy.log_term();
  double prev = conf(BallStats{}, lt);
  for (std::int64_t n = 1; n <= 100000; n = n < 100 ? n + 1 : n + n / 7) {
    const double c = conf(BallStats{n, 0.0, 0, 0.0}, lt);
    if (!(c < prev)) {
      return fmt::format("conf: not strictly decreasing at n = {}", n);
    }
    prev = c;
  }
  for (BallId id = 0; id < policy.size(); ++id) {
    auto s = policy.stats(id);
    const double now = conf(s, lt);
    s.n_target += 1;
    if (!(conf(s, lt) < now)) {
      return fmt::format("conf: ball {} width does not shrink with one more sample", id);
    }
  }
  return std::nullopt;
}

CheckResult check_index_self_bound(const TldpPolicy& policy) {
  const double c_i = policy.config().c_i;
  for (BallId id = 0; id < policy.size(); ++id) {
    const double idx = policy.index(id);
    const double bound = c_i * policy.radius(id) + policy.pre_index(id);
    if (idx > bound) {
      return fmt::format("index: ball {} index {} exceeds self bound {}", id, idx,
                         bound);
    }
  }
  return std::nullopt;
}

CheckResult check_argmax_stable(const TldpPolicy& policy,
                                std::span<const double> x) {
  if (argmax_set(policy, x) != argmax_set(policy, x)) {
    return std::string("argmax: repeated evaluation changed the argmax set");
  }
  return std::nullopt;
}

CheckResult check_partition(const TldpPolicy& policy, std::span<const double> x,
                            Rng& rng, int samples) {
  const auto all = policy.balls();
  std::vector<IntervalUnion> slices;
  std::vector<IntervalUnion> domains;
  for (const auto& b : all) {
    slices.push_back(price_slice(b, x));
    domains.push_back(domain_slice(b, all, x));
  }
  const auto in_any = [](const std::vector<IntervalUnion>& us, double p) {
    return std::any_of(us.begin(), us.end(),
                       [p](const IntervalUnion& u) { return u.contains(p); });
  };
  for (int k = 0; k < samples; ++k) {
    const double p = rng.uniform();
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (domains[i].contains(p) && !slices[i].contains(p)) {
        return fmt::format("partition: domain of ball {} leaks outside its slice at p = {}",
                           i, p);
      }
    }
    const bool covered = in_any(slices, p);
    if (!covered) return fmt::format("partition: price {} not covered", p);
    if (covered != in_any(domains, p)) {
      return fmt::format("partition: price {} in a slice but in no domain", p);
    }
  }
  return std::nullopt;
}

InvariantReport check_episode(const ExperimentSpec& spec, std::uint64_t seed,
                              const InvariantSuiteOptions& opts) {
  InvariantReport report;
  report.episodes = 1;
  Rng probe_rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::int64_t observations = 0;
  double revenue_sum = 0.0;
  std::size_t known = 1;
  const std::string where = fmt::format("{} seed {}", spec.label(), seed);

  auto record = [&](const CheckResult& r, std::int64_t t) {
    if (r && report.failures.size() < 20) {
      report.failures.push_back(fmt::format("{} step {}: {}", where, t, *r));
    }
  };

  run_episode(spec, seed,
              [&](const TldpPolicy& policy, std::span<const double> x,
                  const Selection&, double y) {
                ++observations;
                revenue_sum += y;
                ++report.steps;
                const std::int64_t t = observations;
                if (policy.size() > known) {
                  record(check_separation_since(policy, known), t);
                  known = policy.size();
                }
                record(check_conservation(policy, observations, revenue_sum), t);
                if (t % opts.probe_every == 0 || t == spec.n_q) {
                  ++report.probes;
                  record(check_radius_ladder(policy), t);
                  record(check_conf_monotone(policy), t);
                  record(check_index_self_bound(policy), t);
                  record(check_argmax_stable(policy, x), t);
                  record(check_partition(policy, x, probe_rng, opts.partition_samples), t);
                  Point fresh(x.size());
                  for (auto& v : fresh) v = probe_rng.uniform();
                  record(check_partition(policy, fresh, probe_rng, opts.partition_samples), t);
                }
                if (t == spec.n_q) record(check_separation(policy), t);
              });
  return report;
}

InvariantReport run_invariant_suite(const InvariantSuiteOptions& opts) {
  InvariantReport total;
  for (const auto& scenario : opts.scenarios) {
    for (const auto n_p : opts.source_sizes) {
      ExperimentSpec spec;
      spec.scenario = scenario;
      spec.n_q = opts.n_q;
      spec.n_p = n_p;
      spec.replications = 1;
      for (int e = 0; e < opts.episodes; ++e) {
        const auto r = check_episode(spec, opts.base_seed + e, opts);
        total.episodes += r.episodes;
        total.steps += r.steps;
        total.probes += r.probes;
        total.failures.insert(total.failures.end(), r.failures.begin(),
                              r.failures.end());
      }
    }
  }
  return total;
}

}  // namespace tldp
