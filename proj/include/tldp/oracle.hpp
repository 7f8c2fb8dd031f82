#pragma once

// Optimal-price oracles and per-step regret.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tldp/environments.hpp"

namespace tldp {

inline constexpr double kDefaultGridResolution = 1e-4;

struct PricePoint {
  double price = 0.0;
  double value = 0.0;
};

// Max of f(x, .) over {0, res, 2 res, ..., 1}; ties go to the lowest price.
PricePoint optimal_price_grid(const RewardModel& model,
                              std::span<const double> x,
                              double resolution = kDefaultGridResolution);

// Vertex of the concave quadratic clamped to [0,1]. Throws std::domain_error
// when theta_tilde >= 0.
PricePoint optimal_price_analytic_s1(const Scenario1Reward& model,
                                     std::span<const double> x);

// Peak of the bump whose covariate ball holds x, or the flat 1/4 otherwise
// (price 0 by the lowest-price convention).
PricePoint optimal_price_analytic_s2(const Scenario2Reward& model,
                                     std::span<const double> x);
double optimal_value_analytic_s2(const Scenario2Reward& model,
                                 std::span<const double> x);

// Analytic oracle where available, grid otherwise.
PricePoint optimal_price(const RewardModel& model, std::span<const double> x);

// f*(x) - f(x, p) on the noiseless mean.
double instantaneous_regret(const RewardModel& model, std::span<const double> x,
                            double price);

struct RegretTrace {
  std::vector<double> per_step;
  std::vector<double> cumulative;
  std::uint64_t seed = 0;
  std::string config_id;

  void push(double regret) {
    per_step.push_back(regret);
    cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) + regret);
  }
  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
  std::size_t size() const { return per_step.size(); }
};

}  // namespace tldp
