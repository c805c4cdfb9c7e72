#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace benford::rng {

/// splitmix64 step. Used only to turn (seed, stream) pairs into
/// well-separated engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream-splitting rule: child k of master seed s is splitmix64 of
/// s + (k+1)*phi64. Every sampler and experiment draws from its own child
/// stream, so replicates are independent and runs are reproducible.
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
  return splitmix64(s);
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  return Engine(child_seed(seed, stream));
}

/// Uniform on [0,1) with 53 random bits. Bit-reproducible across platforms,
/// unlike std::uniform_real_distribution.
inline double uniform01(Engine& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Uniform on (0,1); never returns 0, safe under log().
inline double uniform_open01(Engine& g) {
  return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal via Box-Muller, cosine branch only (two uniforms per
/// draw, no cached state).
inline double normal01(Engine& g) {
  double u1 = uniform_open01(g);
  double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.28318530717958647692528676655900577 * u2);
}

}  // namespace benford::rng
