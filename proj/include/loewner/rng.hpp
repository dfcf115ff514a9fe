// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOEWNER_RNG_HPP
#define LOEWNER_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace loewner::rng {

// Counter-based generator: every variate is a pure function of its key, so
// parallel or reordered consumers always see the same stream.

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t h, std::uint64_t v) noexcept {
  return splitmix64(h ^ (v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2)));
}

constexpr std::uint64_t key(std::uint64_t seed, std::uint64_t a,
                            std::uint64_t b, std::uint64_t c) noexcept {
  return mix(mix(mix(splitmix64(seed), a), b), c);
}

// Uniform in the open interval (0, 1); never returns an endpoint.
inline double uniform01(std::uint64_t k) noexcept {
  return static_cast<double>(splitmix64(k) >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

inline std::uint64_t uniform_index(std::uint64_t k, std::uint64_t n) noexcept {
  return splitmix64(k) % n;
}

// One draw from CN(0,1): real and imaginary parts independent N(0,1),
// via the Box-Muller pair of the two uniforms keyed under k.
inline std::complex<double> complex_normal(std::uint64_t k) noexcept {
  const double u1 = uniform01(mix(k, 1));
  const double u2 = uniform01(mix(k, 2));
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

} // namespace loewner::rng

#endif
