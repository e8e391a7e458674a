#include "wnc/rng.hpp"

namespace wnc {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::span<const std::uint64_t> path) noexcept {
  std::uint64_t state = splitmix64(root);
  for (std::uint64_t id : path) {
    state = splitmix64(state ^ splitmix64(id + 0x632be59bd9b4e019ULL));
  }
  return state;
}

std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) noexcept {
  return derive_seed(root, std::span<const std::uint64_t>(path.begin(), path.size()));
}

}  // namespace wnc
