#pragma once

// Transfer-learning dynamic pricing policy: adaptive l-infinity partitioning
// of the covariate-price space with a UCB index, seeded by a source dataset.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tldp/geometry.hpp"
#include "tldp/rng.hpp"

namespace tldp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Absolute tolerance under which two index values count as tied.
inline constexpr double kTieTolerance = 1e-12;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Pre-collected (covariate, price, revenue) triples, stored flat: each row is
// the joint point (x_1..x_d, p) followed by its revenue in a separate array.
class SourceDataset {
 public:
  explicit SourceDataset(std::size_t covariate_dim) : d_(covariate_dim) {}

  std::size_t covariate_dim() const { return d_; }
  std::size_t size() const { return revenue_.size(); }
  bool empty() const { return revenue_.empty(); }

  void add(std::span<const double> x, double price, double revenue);

  std::span<const double> joint(std::size_t i) const {
    return {joint_.data() + i * (d_ + 1), d_ + 1};
  }
  std::span<const double> covariate(std::size_t i) const {
    return {joint_.data() + i * (d_ + 1), d_};
  }
  double price(std::size_t i) const { return joint_[i * (d_ + 1) + d_]; }
  double revenue(std::size_t i) const { return revenue_[i]; }

 private:
  std::size_t d_;
  std::vector<double> joint_;
  std::vector<double> revenue_;
};

struct BallStats {
  std::int64_t n_source = 0;
  double re_source = 0.0;
  std::int64_t n_target = 0;
  double re_target = 0.0;

  std::int64_t count() const { return n_source + n_target; }
  double revenue() const { return re_source + re_target; }
};

struct PolicyConfig {
  std::size_t d = 2;
  std::int64_t n_q = 10000;
  std::int64_t n_p = 0;
  double kappa = 1.0;
  double gamma = 0.0;
  // Should dominate the Lipschitz constant of the reward; not enforced.
  double c_i = 1.0;
  double c_r = 0.25;
  std::optional<double> r_tilde_override;

  void validate() const;
};

// (kappa * n_P)^{(d+3)/(d+3+gamma)}, zero when kappa * n_P is zero.
double effective_source_size(double kappa, std::int64_t n_p, double gamma,
                             std::size_t d);

// log{n_Q v (kappa n_P)^{(d+3)/(d+3+gamma)}}, natural log.
double log_term(const PolicyConfig& cfg);

// Smallest radius the partition may reach.
double compute_r_tilde(const PolicyConfig& cfg);

struct SourceCounts {
  std::int64_t count = 0;
  double revenue = 0.0;
};

SourceCounts source_counts(const Ball& ball, const SourceDataset& src);

// UCB width 2 sqrt(log_term / n). +inf for an empty ball.
double conf(const BallStats& stats, double log_term);

double pre_index(const BallStats& stats, double radius, double c_i,
                 double log_term);

// C_I r(target) + min_i {pre_indices[i] + C_I |c(target) - c(active[i])|}.
double index_of(const Ball& target, std::span<const Ball> active,
                std::span<const double> pre_indices, double c_i);

// ceil(log_term / r^2).
std::int64_t omega(double radius, double log_term);

// Target observations a ball needs before it may be refined.
std::int64_t t_b_q(double radius, const BallStats& stats, double log_term);

using BallId = std::size_t;

struct Selection {
  double price = 0.0;
  BallId ball = 0;
};

class TldpPolicy {
 public:
  // Initializes the active set to the root ball with statistics seeded from
  // the full source dataset. The dataset is owned by the policy.
  TldpPolicy(PolicyConfig cfg, SourceDataset src);

  const PolicyConfig& config() const { return cfg_; }
  const SourceDataset& source() const { return src_; }
  double r_tilde() const { return r_tilde_; }
  double log_term() const { return log_term_; }
  // Index of the next target step (starts at 1).
  std::int64_t t() const { return t_; }

  std::size_t size() const { return radius_.size(); }
  Ball ball(BallId id) const;
  std::vector<Ball> balls() const;
  const BallStats& stats(BallId id) const { return stats_.at(id); }
  double radius(BallId id) const { return radius_.at(id); }
  // Ball this one was split from; nullopt for the root.
  std::optional<BallId> parent(BallId id) const;
  std::span<const double> center(BallId id) const {
    return {centers_.data() + id * dim_, dim_};
  }
  double pre_index(BallId id) const { return pre_.at(id); }
  // C_I r(B) + min over active B' of {pre_index(B') + C_I |c(B) - c(B')|}.
  double index(BallId id) const;

  // Balls whose domain slice at x has positive length, with the slices.
  struct Relevant {
    BallId ball;
    IntervalUnion domain;
  };
  std::vector<Relevant> relevant(std::span<const double> x) const;

  // Domain slice of one active ball at x.
  IntervalUnion domain_slice(BallId id, std::span<const double> x) const;

  // Picks the ball and price for covariate x and refines the partition along
  // the chosen point. Counts are not touched until observe().
  Selection select_price(std::span<const double> x, Rng& rng);

  // Credits revenue y to the ball returned by the preceding select_price.
  void observe(BallId id, double y);

 private:
  BallId add_ball(std::span<const double> center, double radius,
                  std::optional<BallId> parent);
  void refresh_pre_index(BallId id);

  PolicyConfig cfg_;
  SourceDataset src_;
  std::size_t dim_;
  double r_tilde_;
  double log_term_;
  std::int64_t t_ = 1;

  std::vector<double> centers_;
  std::vector<double> radius_;
  std::vector<BallStats> stats_;
  std::vector<double> pre_;
  std::vector<std::optional<BallId>> parent_;
};

}  // namespace tldp
