#include "tldp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tldp {

PricePoint optimal_price_grid(const RewardModel& model,
                              std::span<const double> x, double resolution) {
  if (!(resolution > 0.0 && resolution <= 0.01)) {
    throw std::invalid_argument("grid resolution must lie in (0, 0.01]");
  }
  const auto steps = static_cast<std::int64_t>(std::llround(1.0 / resolution));
  PricePoint best{0.0, reward_mean(model, x, 0.0)};
  for (std::int64_t k = 1; k <= steps; ++k) {
    const double p = static_cast<double>(k) / static_cast<double>(steps);
    const double v = reward_mean(model, x, p);
    if (v > best.value) best = {p, v};
  }
  return best;
}

PricePoint optimal_price_analytic_s1(const Scenario1Reward& model,
                                     std::span<const double> x) {
  if (!(model.theta_tilde < 0.0)) throw std::domain_error("not concave");
  double lin = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) lin += model.theta[k] * x[k];
  const double p = std::clamp(-lin / (2.0 * model.theta_tilde), 0.0, 1.0);
  return {p, reward_mean(model, x, p)};
}

PricePoint optimal_price_analytic_s2(const Scenario2Reward& model,
                                     std::span<const double> x) {
  const std::size_t d = model.covariate_dim();
  for (const auto& c : model.centers) {
    const double cov = linf_distance(x, std::span<const double>(c.data(), d));
    if (cov <= model.r_star) return {c[d], 0.25 + 0.75 * phi(cov)};
  }
  return {0.0, 0.25};
}

double optimal_value_analytic_s2(const Scenario2Reward& model,
                                 std::span<const double> x) {
  return optimal_price_analytic_s2(model, x).value;
}

PricePoint optimal_price(const RewardModel& model, std::span<const double> x) {
  if (const auto* s1 = std::get_if<Scenario1Reward>(&model)) {
    if (s1->theta_tilde < 0.0) return optimal_price_analytic_s1(*s1, x);
    return optimal_price_grid(model, x);
  }
  return optimal_price_analytic_s2(std::get<Scenario2Reward>(model), x);
}

double instantaneous_regret(const RewardModel& model, std::span<const double> x,
                            double price) {
  return optimal_price(model, x).value - reward_mean(model, x, price);
}

}  // namespace tldp
