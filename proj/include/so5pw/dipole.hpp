#pragma once

// Dipole kernel (delta_ij - 3 q_i q_j) between pair amplitudes, its spin-1
// Wigner-D form, and the mean-field point it induces.

#include "so5pw/meanfield.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace so5pw {

using RealMatrix3 = Eigen::Matrix3d;
using ComplexMatrix3 = SquareMatrix<3>;

struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  /// (psi, 2 omega, pi - psi) for q = (sin w cos psi, sin w sin psi, cos w).
  [[nodiscard]] static EulerAngles from_qhat(const Vec3& q) {
    const double omega = std::acos(std::clamp(q[2], -1.0, 1.0));
    const double psi = std::atan2(q[1], q[0]);
    return {psi, 2.0 * omega, std::numbers::pi - psi};
  }
};

inline void require_unit(const Vec3& q, const char* who) {
  if (std::abs(norm(q) - 1.0) > 1e-12) throw std::invalid_argument(std::string(who) + ": not a unit vector");
}

/// Unit vector along n - n'.
[[nodiscard]] inline Vec3 qhat(const Vec3& n, const Vec3& nprime) {
  const Vec3 d{n[0] - nprime[0], n[1] - nprime[1], n[2] - nprime[2]};
  const double len = norm(d);
  if (len < 1e-14) throw std::invalid_argument("qhat: n and n' coincide");
  return {d[0] / len, d[1] / len, d[2] / len};
}

[[nodiscard]] inline RealMatrix3 cartesian_kernel(const Vec3& q) {
  require_unit(q, "cartesian_kernel");
  RealMatrix3 k;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      k(i, j) = (i == j ? 1.0 : 0.0) - 3.0 * q[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(j)];
  return k;
}

/// Small Wigner d^1(beta), rows/columns ordered m = +1, 0, -1.
[[nodiscard]] inline Eigen::Matrix3d wigner_small_d1(double beta) {
  const double c = std::cos(beta), s = std::sin(beta) / std::sqrt(2.0);
  Eigen::Matrix3d d;
  d << 0.5 * (1.0 + c), -s, 0.5 * (1.0 - c),
       s, c, -s,
       0.5 * (1.0 - c), s, 0.5 * (1.0 + c);
  return d;
}

/// D^1_{m'm}(alpha, beta, gamma) = e^{-i m' alpha} d^1_{m'm}(beta) e^{-i m gamma}.
[[nodiscard]] inline ComplexMatrix3 wigner_d1(const EulerAngles& e) {
  const Eigen::Matrix3d d = wigner_small_d1(e.beta);
  const std::array<int, 3> m{1, 0, -1};
  ComplexMatrix3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      out(r, c) = std::polar(1.0, -m[static_cast<std::size_t>(r)] * e.alpha) * d(r, c) *
                  std::polar(1.0, -m[static_cast<std::size_t>(c)] * e.gamma);
  return out;
}

/// Pair-side component map ( <T_-/2i>, <i T_z/sqrt2>, <i T_+/2> ) from Cartesian <T>.
[[nodiscard]] inline ComplexMatrix3 pair_component_map() {
  const double r2 = std::sqrt(2.0);
  ComplexMatrix3 s;
  s << -0.5 * I_unit, -0.5, 0.0,
       0.0, 0.0, I_unit / r2,
       0.5 * I_unit, -0.5, 0.0;
  return s;
}

/// Gap-side component map (D_uu, sqrt2 D_ud, D_dd) from a Cartesian Delta,
/// where D_ab is the amplitude of a+_{k a} a+_{-k b} in Delta.T+. Read off the
/// Fock-space generators rather than assumed.
[[nodiscard]] inline ComplexMatrix3 gap_component_map(const GeneratorSet& g) {
  const StateVector vac = vacuum();
  const std::array<std::size_t, 3> rows{basis_index(true, false, true, false),
                                        basis_index(true, false, false, true),
                                        basis_index(false, true, false, true)};
  const std::array<double, 3> scale{1.0, std::sqrt(2.0), 1.0};
  ComplexMatrix3 l;
  for (int i = 0; i < 3; ++i) {
    const StateVector v = g.Tdag(i) * vac;
    for (std::size_t r = 0; r < 3; ++r)
      l(static_cast<Eigen::Index>(r), i) = scale[r] * v(static_cast<Eigen::Index>(rows[r]));
  }
  return l;
}

/// Ratio of the Wigner-form prefactor 4 pi gamma^2 / 3 to the Hamiltonian
/// prefactor 2 pi gamma^2 / 3.
inline constexpr double kDipolePrefactorRatio = 2.0;

struct EquivReport {
  Vec3 q{};
  EulerAngles euler;
  double residual = 0.0;
  bool passed = false;
};

/// Compares the Cartesian kernel carried into the spherical component maps,
///   L (delta - 3 q q) S^{-1},
/// with 2 (I/2 + (3/2) D^1(psi, 2 omega, pi - psi)).
[[nodiscard]] inline EquivReport kernel_equivalence(const Vec3& q, const GeneratorSet& g,
                                                    double tolerance = 1e-10) {
  require_unit(q, "kernel_equivalence");
  const ComplexMatrix3 s = pair_component_map();
  const ComplexMatrix3 l = gap_component_map(g);
  const ComplexMatrix3 k = cartesian_kernel(q).cast<complex>();
  const ComplexMatrix3 lhs = l * k * s.inverse();

  EquivReport rep;
  rep.q = q;
  rep.euler = EulerAngles::from_qhat(q);
  const ComplexMatrix3 rhs =
      kDipolePrefactorRatio * (0.5 * ComplexMatrix3::Identity() + 1.5 * wigner_d1(rep.euler));
  rep.residual = max_norm(lhs - rhs);
  rep.passed = rep.residual < tolerance;
  return rep;
}

/// Mean-field point of the dipole Hamiltonian: Delta = c (delta - 3 q q) <T>.
[[nodiscard]] inline MeanFieldPoint dipole_meanfield_point(double epsilon, const CVec3& expected_t,
                                                           const Vec3& q, double coupling = 1.0) {
  const RealMatrix3 k = cartesian_kernel(q);
  CVec3 delta{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      delta[i] += coupling * k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * expected_t[j];
  return {epsilon, DVector(delta)};
}

}  // namespace so5pw
