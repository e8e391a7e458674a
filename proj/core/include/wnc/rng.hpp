#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace wnc {

/// Derives an independent seed for the substream addressed by `path` under
/// `root` (e.g. {experiment, grid index, replica, plant}). Adding a plant or
/// a grid point never changes the draws of another path.
std::uint64_t derive_seed(std::uint64_t root, std::span<const std::uint64_t> path) noexcept;
std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) noexcept;

/// Per-worker random source. Not shared between threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t root, std::initializer_list<std::uint64_t> path) : engine_(derive_seed(root, path)) {}

  double normal() { return std_normal_(engine_); }
  double normal(double variance) { return std::sqrt(variance) * std_normal_(engine_); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  std::uint64_t bits() { return engine_(); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> std_normal_{0.0, 1.0};
};

}  // namespace wnc
