#pragma once
#include <cstdint>
#include <random>

namespace wtsim {

// SplitMix64 finalizer, used to derive independent child seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded generator. Same seed, same stream; split() gives a decorrelated
// child stream per purpose so one consumer never perturbs another.
class Rng {
public:
  using engine_type = std::mt19937_64;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  Rng split(std::uint64_t stream) const { return Rng(mix64(seed_ ^ mix64(stream + 1))); }

  bool coin() { return std::bernoulli_distribution(0.5)(engine_); }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

  double normal(double mean, double sd) {
    return normal_(engine_, std::normal_distribution<double>::param_type(mean, sd));
  }

  engine_type& engine() noexcept { return engine_; }

private:
  std::uint64_t seed_;
  engine_type engine_;
  std::normal_distribution<double> normal_;
};

} // namespace wtsim
