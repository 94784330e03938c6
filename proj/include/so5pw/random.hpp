#pragma once

// Deterministic sampling helpers on top of std::mt19937_64, whose output
// sequence is fixed by the standard.

#include "so5pw/harmonics.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace so5pw {

inline constexpr const char* kRngName = "mt19937_64";

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform on the unit sphere (Archimedes: z uniform in [-1, 1]).
  Vec3 direction() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(phi), s * std::sin(phi), z};
  }

  /// Uniform direction with |z| <= 1 - margin, away from the poles.
  Vec3 direction_off_pole(double margin = 1e-3) {
    const double z = uniform(-1.0 + margin, 1.0 - margin);
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    const double s = std::sqrt(1.0 - z * z);
    return {s * std::cos(phi), s * std::sin(phi), z};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace so5pw
