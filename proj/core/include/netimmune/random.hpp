#pragma once

#include <cstdint>
#include <random>

namespace netimmune {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; spreads nearby integer seeds over the full state space.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed at a fixed integer offset under a parent seed. Used to build the
/// master -> network -> strategy -> trial hierarchy.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t offset) noexcept {
  return mix_seed(parent + offset);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(mix_seed(seed)); }

/// Uniform integer in [0, bound). bound must be positive.
template <class Engine>
std::uint64_t uniform_index(Engine& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

template <class Engine>
bool bernoulli(Engine& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

}  // namespace netimmune
