#include "tldp/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tldp {

void SourceDataset::add(std::span<const double> x, double price,
                        double revenue) {
  if (x.size() != d_) {
    throw DimensionError("SourceDataset::add: covariate has " +
                         std::to_string(x.size()) + " entries, expected " +
                         std::to_string(d_));
  }
  joint_.insert(joint_.end(), x.begin(), x.end());
  joint_.push_back(price);
  revenue_.push_back(revenue);
}

void PolicyConfig::validate() const {
  if (d < 1) throw ConfigError("covariate dimension must be at least 1");
  if (n_q < 3) throw ConfigError("horizon n_Q must be at least 3");
  if (n_p < 0) throw ConfigError("source size n_P must be nonnegative");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw ConfigError("kappa must lie in [0,1]");
  if (!(gamma >= 0.0)) throw ConfigError("gamma must be nonnegative");
  if (!(c_i > 0.0)) throw ConfigError("C_I must be positive");
  if (!(c_r > 0.0)) throw ConfigError("C_r must be positive");
  if (r_tilde_override && !(*r_tilde_override > 0.0)) {
    throw ConfigError("r_tilde override must be positive");
  }
}

double effective_source_size(double kappa, std::int64_t n_p, double gamma,
                             std::size_t d) {
  const double base = kappa * static_cast<double>(n_p);
  if (base <= 0.0) return 0.0;
  const double dd = static_cast<double>(d);
  return std::pow(base, (dd + 3.0) / (dd + 3.0 + gamma));
}

double log_term(const PolicyConfig& cfg) {
  const double s = effective_source_size(cfg.kappa, cfg.n_p, cfg.gamma, cfg.d);
  return std::log(std::max(static_cast<double>(cfg.n_q), s));
}

double compute_r_tilde(const PolicyConfig& cfg) {
  if (cfg.r_tilde_override) return *cfg.r_tilde_override;
  const double n = static_cast<double>(cfg.n_q) +
                   effective_source_size(cfg.kappa, cfg.n_p, cfg.gamma, cfg.d);
  if (n <= 1.0) throw ConfigError("horizon too small");
  const double dd = static_cast<double>(cfg.d);
  return cfg.c_r * std::pow(std::log(n) / n, 1.0 / (dd + 3.0));
}

SourceCounts source_counts(const Ball& ball, const SourceDataset& src) {
  SourceCounts out;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (contains(ball, src.joint(i))) {
      ++out.count;
      out.revenue += src.revenue(i);
    }
  }
  return out;
}

double conf(const BallStats& stats, double log_term) {
  const auto n = stats.count();
  if (n <= 0) return kInfinity;
  return 2.0 * std::sqrt(log_term / static_cast<double>(n));
}

double pre_index(const BallStats& stats, double radius, double c_i,
                 double log_term) {
  const auto n = stats.count();
  if (n <= 0) return kInfinity;
  const double mean = stats.revenue() / static_cast<double>(n);
  return mean + c_i * radius + conf(stats, log_term);
}

double index_of(const Ball& target, std::span<const Ball> active,
                std::span<const double> pre_indices, double c_i) {
  if (active.size() != pre_indices.size()) {
    throw std::invalid_argument("index_of: one pre-index per active ball required");
  }
  double best = kInfinity;
  for (std::size_t i = 0; i < active.size(); ++i) {
    best = std::min(best, pre_indices[i] + c_i * linf_distance(target.center, active[i].center));
  }
  return c_i * target.radius + best;
}

std::int64_t omega(double radius, double log_term) {
  return static_cast<std::int64_t>(std::ceil(log_term / (radius * radius)));
}

std::int64_t t_b_q(double radius, const BallStats& stats, double log_term) {
  const auto w = omega(radius, log_term);
  return w < stats.n_source ? 0 : w;
}

TldpPolicy::TldpPolicy(PolicyConfig cfg, SourceDataset src)
    : cfg_(std::move(cfg)), src_(std::move(src)), dim_(cfg_.d + 1) {
  cfg_.validate();
  if (src_.covariate_dim() != cfg_.d) {
    throw ConfigError("source dataset dimension does not match config");
  }
  if (static_cast<std::int64_t>(src_.size()) != cfg_.n_p) {
    throw ConfigError("source dataset holds " + std::to_string(src_.size()) +
                      " triples but config says n_P = " +
                      std::to_string(cfg_.n_p));
  }
  r_tilde_ = compute_r_tilde(cfg_);
  log_term_ = tldp::log_term(cfg_);
  const Ball root = Ball::root(cfg_.d);
  add_ball(root.center, root.radius, std::nullopt);
}

Ball TldpPolicy::ball(BallId id) const {
  const auto c = center(id);
  return Ball{Point(c.begin(), c.end()), radius_.at(id)};
}

std::vector<Ball> TldpPolicy::balls() const {
  std::vector<Ball> out;
  out.reserve(size());
  for (BallId id = 0; id < size(); ++id) out.push_back(ball(id));
  return out;
}

std::optional<BallId> TldpPolicy::parent(BallId id) const {
  return parent_.at(id);
}

BallId TldpPolicy::add_ball(std::span<const double> c, double radius,
                            std::optional<BallId> parent) {
  const BallId id = radius_.size();
  parent_.push_back(parent);
  centers_.insert(centers_.end(), c.begin(), c.end());
  radius_.push_back(radius);
  const auto counts = source_counts(Ball{Point(c.begin(), c.end()), radius}, src_);
  stats_.push_back(BallStats{counts.count, counts.revenue, 0, 0.0});
  pre_.push_back(0.0);
  refresh_pre_index(id);
  return id;
}

void TldpPolicy::refresh_pre_index(BallId id) {
  pre_[id] = tldp::pre_index(stats_[id], radius_[id], cfg_.c_i, log_term_);
}

double TldpPolicy::index(BallId id) const {
  const double* c = centers_.data() + id * dim_;
  double best = kInfinity;
  for (BallId other = 0; other < radius_.size(); ++other) {
    const double p = pre_[other];
    if (p >= best) continue;
    const double* o = centers_.data() + other * dim_;
    double dist = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      dist = std::max(dist, std::abs(c[k] - o[k]));
    }
    best = std::min(best, p + cfg_.c_i * dist);
  }
  return cfg_.c_i * radius_[id] + best;
}

IntervalUnion TldpPolicy::domain_slice(BallId id,
                                       std::span<const double> x) const {
  return tldp::domain_slice(ball(id), balls(), x);
}

std::vector<TldpPolicy::Relevant> TldpPolicy::relevant(
    std::span<const double> x) const {
  if (x.size() != cfg_.d) {
    throw DimensionError("covariate has " + std::to_string(x.size()) +
                         " entries, policy expects " + std::to_string(cfg_.d));
  }
  struct Covering {
    BallId id;
    double radius;
    Interval slice;
  };
  std::vector<Covering> covering;
  for (BallId id = 0; id < radius_.size(); ++id) {
    const double* c = centers_.data() + id * dim_;
    const double r = radius_[id];
    bool inside = true;
    for (std::size_t k = 0; k < cfg_.d && inside; ++k) {
      inside = std::abs(c[k] - x[k]) <= r;
    }
    if (!inside) continue;
    const double pc = c[cfg_.d];
    covering.push_back({id, r, {std::max(0.0, pc - r), std::min(1.0, pc + r)}});
  }
  std::stable_sort(covering.begin(), covering.end(),
                   [](const Covering& a, const Covering& b) {
                     return a.radius < b.radius;
                   });

  // Sweep radii upward; `smaller` holds the union of slices of all strictly
  // smaller covering balls.
  std::vector<Relevant> out;
  IntervalUnion smaller;
  std::size_t group = 0;
  while (group < covering.size()) {
    std::size_t end = group;
    while (end < covering.size() && covering[end].radius == covering[group].radius) {
      ++end;
    }
    for (std::size_t i = group; i < end; ++i) {
      IntervalUnion dom(covering[i].slice);
      dom.subtract(smaller);
      if (dom.length() > kLengthTolerance) {
        out.push_back({covering[i].id, std::move(dom)});
      }
    }
    for (std::size_t i = group; i < end; ++i) smaller.add(covering[i].slice);
    group = end;
  }
  std::sort(out.begin(), out.end(), [](const Relevant& a, const Relevant& b) {
    return a.ball < b.ball;
  });
  return out;
}

Selection TldpPolicy::select_price(std::span<const double> x, Rng& rng) {
  const auto candidates = relevant(x);
  if (candidates.empty()) throw std::logic_error("no relevant ball");

  std::vector<double> values(candidates.size());
  double best = -kInfinity;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    values[i] = index(candidates[i].ball);
    best = std::max(best, values[i]);
  }
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const bool tied = std::isinf(best) ? values[i] == best
                                       : std::abs(values[i] - best) <= kTieTolerance;
    if (tied) ties.push_back(i);
  }
  const std::size_t pick = ties.size() == 1 ? ties.front() : ties[rng.index(ties.size())];

  const double price = sample_uniform(candidates[pick].domain, rng);
  BallId sel = candidates[pick].ball;

  Point joint(x.begin(), x.end());
  joint.push_back(price);
  while (stats_[sel].n_target >= t_b_q(radius_[sel], stats_[sel], log_term_) &&
         radius_[sel] >= 2.0 * r_tilde_) {
    sel = add_ball(joint, radius_[sel] / 2.0, sel);
  }
  return {price, sel};
}

void TldpPolicy::observe(BallId id, double y) {
  if (id >= radius_.size()) {
    throw std::out_of_range("observe: unknown ball id " + std::to_string(id));
  }
  auto& s = stats_[id];
  s.n_target += 1;
  s.re_target += y;
  refresh_pre_index(id);
  ++t_;
}

}  // namespace tldp
