#include "tldp/environments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace tldp {

Scenario1Reward Scenario1Reward::make(double theta0, std::vector<double> theta,
                                      double theta_tilde) {
  if (theta.empty()) throw ConfigError("Scenario 1 reward needs d >= 1");
  Scenario1Reward model{theta0, std::move(theta), theta_tilde};
  const std::size_t d = model.theta.size();
  std::vector<double> x(d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    for (std::size_t k = 0; k < d; ++k) x[k] = (mask >> k) & 1U ? 1.0 : 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double f = reward_mean(model, x, i / 1000.0);
      if (f < -1e-12 || f > 1.0 + 1e-12) {
        throw ConfigError("Scenario 1 reward leaves [0,1]");
      }
    }
  }
  return model;
}

Scenario2Reward Scenario2Reward::make(std::vector<Point> centers,
                                      double r_star) {
  if (centers.empty()) throw ConfigError("Scenario 2 reward needs centers");
  if (!(r_star > 0.0 && r_star <= 1.0)) throw ConfigError("r* must lie in (0,1]");
  const std::size_t dim = centers.front().size();
  if (dim < 2) throw ConfigError("Scenario 2 centers need d+1 >= 2 entries");
  for (const auto& c : centers) {
    if (c.size() != dim) throw DimensionError("Scenario 2 centers differ in size");
  }
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      const std::span<const double> a(centers[i].data(), dim - 1);
      const std::span<const double> b(centers[j].data(), dim - 1);
      if (linf_distance(a, b) < 2.0 * r_star) {
        throw ConfigError("Scenario 2 covariate balls overlap");
      }
    }
  }
  return Scenario2Reward{std::move(centers), r_star};
}

double SourceSamplerConfig::band_density() const {
  return scenario == 1 ? kappa : (1.0 - kappa * (1.0 - r_price)) / r_price;
}

double SourceSamplerConfig::off_band_density() const {
  return scenario == 1 ? (1.0 - kappa * r_price) / (1.0 - r_price) : kappa;
}

void SourceSamplerConfig::validate() const {
  if (scenario != 1 && scenario != 2) throw ConfigError("scenario must be 1 or 2");
  if (!(gamma >= 0.0)) throw ConfigError("gamma must be nonnegative");
  if (!(r_price > 0.0 && r_price < 1.0)) throw ConfigError("price band width must lie in (0,1)");
  const auto b = band();
  if (b.lo < 0.0 || b.hi > 1.0) throw ConfigError("price band leaves [0,1]");
  if (band_density() < 0.0 || off_band_density() < 0.0) {
    throw ConfigError("price density is negative for this kappa");
  }
}

Point sample_target_covariate(std::size_t d, Rng& rng) {
  Point x(d);
  for (auto& v : x) v = rng.uniform();
  return x;
}

Point sample_source_covariate(double gamma, std::size_t d, Rng& rng) {
  const double radius =
      0.5 * std::pow(rng.uniform(), 1.0 / (gamma + static_cast<double>(d)));
  const std::size_t face = rng.index(2 * d);
  Point x(d);
  for (std::size_t k = 0; k < d; ++k) {
    x[k] = 0.5 + radius * (2.0 * rng.uniform() - 1.0);
  }
  x[face / 2] = 0.5 + (face % 2 == 0 ? -radius : radius);
  return x;
}

double sample_source_price(std::span<const double> /*x*/,
                           const SourceSamplerConfig& cfg, Rng& rng) {
  const auto band = cfg.band();
  if (rng.uniform() < cfg.band_mass()) {
    return band.lo + cfg.r_price * rng.uniform();
  }
  IntervalUnion outside(Interval{0.0, 1.0});
  outside.subtract(band);
  return outside.at_fraction(rng.uniform());
}

double exploration_coefficient_of(const SourceSamplerConfig& cfg) {
  return std::min(cfg.band_density(), cfg.off_band_density());
}

double phi(double z) {
  if (z < 1.0 / 12.0) return 1.0;
  if (z < 1.0 / 6.0) return 2.0 - 12.0 * z;
  return 0.0;
}

double reward_mean(const Scenario1Reward& model, std::span<const double> x,
                   double p) {
  if (x.size() != model.theta.size()) {
    throw DimensionError("Scenario 1 reward: covariate dimension mismatch");
  }
  double lin = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) lin += model.theta[k] * x[k];
  return model.theta0 + lin * p + model.theta_tilde * p * p;
}

double reward_mean(const Scenario2Reward& model, std::span<const double> x,
                   double p) {
  const std::size_t d = model.covariate_dim();
  if (x.size() != d) {
    throw DimensionError("Scenario 2 reward: covariate dimension mismatch");
  }
  double f = 0.25;
  for (const auto& c : model.centers) {
    double cov = 0.0;
    for (std::size_t k = 0; k < d; ++k) cov = std::max(cov, std::abs(x[k] - c[k]));
    if (cov > model.r_star) continue;
    const double joint = std::max(cov, std::abs(p - c[d]));
    f += 0.75 * phi(joint);
  }
  return f;
}

double reward_mean(const RewardModel& model, std::span<const double> x,
                   double p) {
  return std::visit([&](const auto& m) { return reward_mean(m, x, p); }, model);
}

double sample_reward(const RewardModel& model, const NoiseModel& noise,
                     std::span<const double> x, double p, Rng& rng) {
  const double f = reward_mean(model, x, p);
  switch (noise.kind) {
    case NoiseModel::Kind::uniform_band:
      return f + noise.scale * (2.0 * rng.uniform() - 1.0);
    case NoiseModel::Kind::gaussian:
      return rng.normal(f, noise.scale);
    case NoiseModel::Kind::bernoulli:
      if (f < 0.0 || f > 1.0) {
        throw std::domain_error("bernoulli reward needs mean in [0,1]");
      }
      return rng.uniform() < f ? 1.0 : 0.0;
  }
  throw std::logic_error("unknown noise kind");
}

double lipschitz_constant(const RewardModel& model) {
  if (const auto* s1 = std::get_if<Scenario1Reward>(&model)) {
    double l1 = 0.0;
    for (double t : s1->theta) l1 += std::abs(t);
    // |d/dx_k| <= |theta_k|, |d/dp| <= |theta|_1 + 2 |theta_tilde|
    return 2.0 * l1 + 2.0 * std::abs(s1->theta_tilde);
  }
  return 9.0;
}

SourceDataset generate_source_dataset(std::int64_t n_p,
                                      const SourceSamplerConfig& cfg,
                                      const RewardModel& model,
                                      const NoiseModel& noise, Rng& rng) {
  if (n_p < 0) throw ConfigError("n_P must be nonnegative");
  cfg.validate();
  SourceDataset src(cfg.d);
  for (std::int64_t i = 0; i < n_p; ++i) {
    const Point x = sample_source_covariate(cfg.gamma, cfg.d, rng);
    const double p = sample_source_price(x, cfg, rng);
    const double y = sample_reward(model, noise, x, p, rng);
    src.add(x, p, y);
  }
  return src;
}

SourceSamplerConfig Scenario::source_sampler(double gamma, double kappa) const {
  SourceSamplerConfig cfg;
  cfg.gamma = gamma;
  cfg.kappa = kappa;
  cfg.p_star = 0.5;
  cfg.r_price = 0.25;
  cfg.scenario = family;
  cfg.d = d;
  return cfg;
}

namespace {

std::map<std::string, Scenario, std::less<>> build_registry() {
  constexpr double q = 0.25;
  constexpr double h = 0.75;
  std::map<std::string, Scenario, std::less<>> reg;
  reg.emplace("s1c1", Scenario{"s1c1", 1, 2,
                               Scenario1Reward::make(0.2, {0.3, 0.2}, -0.1),
                               NoiseModel::uniform_band(0.1)});
  reg.emplace("s1c2", Scenario{"s1c2", 1, 3,
                               Scenario1Reward::make(0.3, {0.1, 0.4, -0.2}, -0.1),
                               NoiseModel::uniform_band(0.1)});
  reg.emplace("s2c1",
              Scenario{"s2c1", 2, 2,
                       Scenario2Reward::make({{q, q, q}, {h, q, q}, {q, h, h}, {h, h, q}}, 0.25),
                       NoiseModel::gaussian(0.01)});
  reg.emplace("s2c2",
              Scenario{"s2c2", 2, 3,
                       Scenario2Reward::make({{q, q, q, q},
                                              {h, q, q, q},
                                              {q, h, q, q},
                                              {h, h, q, q},
                                              {q, q, h, h},
                                              {h, q, h, h},
                                              {q, h, h, h},
                                              {h, h, h, h}},
                                             0.25),
                       NoiseModel::gaussian(0.01)});
  return reg;
}

const std::map<std::string, Scenario, std::less<>>& registry() {
  static const auto reg = build_registry();
  return reg;
}

}  // namespace

const Scenario& scenario_by_id(std::string_view id) {
  const auto& reg = registry();
  const auto it = reg.find(id);
  if (it == reg.end()) {
    throw ConfigError("unknown scenario '" + std::string(id) +
                      "' (expected s1c1, s1c2, s2c1 or s2c2)");
  }
  return it->second;
}

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids{"s1c1", "s1c2", "s2c1", "s2c2"};
  return ids;
}

}  // namespace tldp
