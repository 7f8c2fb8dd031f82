#pragma once

// Synthetic covariate-shift pricing environments: target and source
// covariate samplers, piecewise-uniform source price densities, the two
// reward families and their noise models.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tldp/geometry.hpp"
#include "tldp/policy.hpp"
#include "tldp/rng.hpp"

namespace tldp {

// f(x, p) = theta0 + theta^T x p + theta_tilde p^2.
struct Scenario1Reward {
  double theta0 = 0.0;
  std::vector<double> theta;
  double theta_tilde = 0.0;

  // Validates that f stays within [0,1] on Z. f is affine in x for fixed p,
  // so checking the cube vertices on a fine price grid suffices.
  static Scenario1Reward make(double theta0, std::vector<double> theta,
                              double theta_tilde);

  std::size_t covariate_dim() const { return theta.size(); }
};

// f(x, p) = 1/4 + sum_i 3/4 phi(|(x,p) - z_i|_inf) 1{|x - x_i|_inf <= r*}.
struct Scenario2Reward {
  std::vector<Point> centers;  // joint points (x_i, p_i)
  double r_star = 0.25;

  // Requires covariate projections of the centers to be at least 2 r* apart.
  static Scenario2Reward make(std::vector<Point> centers, double r_star);

  std::size_t covariate_dim() const { return centers.front().size() - 1; }
};

using RewardModel = std::variant<Scenario1Reward, Scenario2Reward>;

struct NoiseModel {
  enum class Kind { uniform_band, gaussian, bernoulli };
  Kind kind = Kind::uniform_band;
  // Half-width for uniform_band, standard deviation for gaussian.
  double scale = 0.0;

  static NoiseModel uniform_band(double nu) { return {Kind::uniform_band, nu}; }
  static NoiseModel gaussian(double sigma) { return {Kind::gaussian, sigma}; }
  static NoiseModel bernoulli() { return {Kind::bernoulli, 0.0}; }
};

struct SourceSamplerConfig {
  double gamma = 0.0;
  double kappa = 1.0;
  double p_star = 0.5;
  double r_price = 0.25;
  // 1: band density kappa, 2: off-band density kappa.
  int scenario = 1;
  std::size_t d = 2;

  double band_density() const;
  double off_band_density() const;
  // Probability that a source price falls in the band.
  double band_mass() const { return band_density() * r_price; }
  Interval band() const { return {p_star - r_price / 2.0, p_star + r_price / 2.0}; }
  void validate() const;
};

Point sample_target_covariate(std::size_t d, Rng& rng);

// Draws from density c |x - x*|_inf^gamma on [0,1]^d, x* = (1/2, ..., 1/2):
// radius by inverse CDF (2r)^{gamma+d}, then uniform on the l-inf sphere.
Point sample_source_covariate(double gamma, std::size_t d, Rng& rng);

double sample_source_price(std::span<const double> x,
                           const SourceSamplerConfig& cfg, Rng& rng);

// Minimum of the piecewise density values.
double exploration_coefficient_of(const SourceSamplerConfig& cfg);

double phi(double z);

double reward_mean(const Scenario1Reward& model, std::span<const double> x,
                   double p);
double reward_mean(const Scenario2Reward& model, std::span<const double> x,
                   double p);
double reward_mean(const RewardModel& model, std::span<const double> x,
                   double p);

double sample_reward(const RewardModel& model, const NoiseModel& noise,
                     std::span<const double> x, double p, Rng& rng);

// l-inf Lipschitz constant of the mean reward.
double lipschitz_constant(const RewardModel& model);

SourceDataset generate_source_dataset(std::int64_t n_p,
                                      const SourceSamplerConfig& cfg,
                                      const RewardModel& model,
                                      const NoiseModel& noise, Rng& rng);

// Named simulation settings: s1c1, s1c2, s2c1, s2c2.
struct Scenario {
  std::string id;
  int family = 1;
  std::size_t d = 2;
  RewardModel model;
  NoiseModel noise;

  SourceSamplerConfig source_sampler(double gamma, double kappa) const;
};

const Scenario& scenario_by_id(std::string_view id);
const std::vector<std::string>& scenario_ids();

}  // namespace tldp
