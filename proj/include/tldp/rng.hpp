#pragma once

#include <cstdint>
#include <random>

namespace tldp {

// Independent sub-streams derived from one replication seed.
enum class Stream : std::uint32_t {
  target_covariates = 1,
  source_data = 2,
  policy = 3,
  reward_noise = 4,
};

// Thin wrapper over mt19937_64. uniform() is built from the raw 64-bit
// output so draws are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  Rng(std::uint64_t seed, Stream stream) : engine_(make_seed_seq(seed, stream)) {}

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

  double normal(double mean, double sd) {
    return std::normal_distribution<double>(mean, sd)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  static std::mt19937_64 make_seed_seq(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
  }

  std::mt19937_64 engine_;
};

}  // namespace tldp
