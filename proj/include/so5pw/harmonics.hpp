#pragma once

// l <= 1 spherical harmonics with the Condon-Shortley phase, and unit vectors
// from polar angles.

#include "so5pw/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace so5pw {

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<complex, 3>;

[[nodiscard]] inline Vec3 unit_vector(double theta, double psi) {
  return {std::sin(theta) * std::cos(psi), std::sin(theta) * std::sin(psi), std::cos(theta)};
}

[[nodiscard]] inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

[[nodiscard]] inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

[[nodiscard]] inline double y00() { return 0.5 / std::sqrt(std::numbers::pi); }

/// Y_1m(theta, psi) for m in {-1, 0, 1}.
[[nodiscard]] inline complex y1m(int m, double theta, double psi) {
  const double pi = std::numbers::pi;
  switch (m) {
    case 1:
      return -std::sqrt(3.0 / (8.0 * pi)) * std::sin(theta) * std::polar(1.0, psi);
    case 0:
      return std::sqrt(3.0 / (4.0 * pi)) * std::cos(theta);
    case -1:
      return std::sqrt(3.0 / (8.0 * pi)) * std::sin(theta) * std::polar(1.0, -psi);
    default:
      throw std::invalid_argument("y1m: m must be -1, 0 or 1");
  }
}

/// Y_1m evaluated at a unit direction.
[[nodiscard]] inline complex y1m(int m, const Vec3& n) {
  return y1m(m, std::acos(std::clamp(n[2], -1.0, 1.0)), std::atan2(n[1], n[0]));
}

}  // namespace so5pw
