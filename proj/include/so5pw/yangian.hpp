#pragma once

// Y(SU(2)) generators on two spin-1/2 slots and the s-wave / p-wave pair
// wavefunctions Psi_0, Psi_1 sampled pointwise in the momentum direction.
// Two-spin basis: |uu>, |ud>, |du>, |dd>; a 2x2 amplitude matrix M_ab maps to
// the coefficient of |a b>.

#include "so5pw/harmonics.hpp"
#include "so5pw/quadrature.hpp"
#include "so5pw/so5.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace so5pw {

using SpinMatrix = SquareMatrix<4>;
using Spinor = Vector<4>;

struct SpinOp {
  std::array<SpinMatrix, 3> first;   // S_a (x) 1
  std::array<SpinMatrix, 3> second;  // 1 (x) S_a
  std::array<SpinMatrix, 3> total;
};

[[nodiscard]] inline SquareMatrix<4> kron(const SquareMatrix<2>& a, const SquareMatrix<2>& b) {
  SquareMatrix<4> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

[[nodiscard]] inline SpinOp build_spin_ops() {
  const auto sigma = pauli_matrices();
  const SquareMatrix<2> id = SquareMatrix<2>::Identity();
  SpinOp s;
  for (std::size_t a = 0; a < 3; ++a) {
    s.first[a] = kron(0.5 * sigma[a + 1], id);
    s.second[a] = kron(id, 0.5 * sigma[a + 1]);
    s.total[a] = s.first[a] + s.second[a];
  }
  return s;
}

struct YangianOp {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double h = 0.0;
  double eta = 0.0;
  std::array<SpinMatrix, 3> j;  // untranslated generators

  /// mu2 - mu1 + h/2.
  [[nodiscard]] double coefficient() const { return mu2 - mu1 + 0.5 * h; }

  /// J + eta S.
  [[nodiscard]] std::array<SpinMatrix, 3> translated(const SpinOp& s) const {
    std::array<SpinMatrix, 3> out;
    for (std::size_t a = 0; a < 3; ++a) out[a] = j[a] + eta * s.total[a];
    return out;
  }
};

/// J_a = mu1 S_a (x) 1 + mu2 1 (x) S_a - (ih/4) eps_abc (S_b (x) S_c - S_c (x) S_b).
[[nodiscard]] inline YangianOp build_yangian(double mu1, double mu2, double h) {
  const auto sigma = pauli_matrices();
  std::array<SquareMatrix<2>, 3> s;
  for (std::size_t a = 0; a < 3; ++a) s[a] = 0.5 * sigma[a + 1];
  YangianOp y{mu1, mu2, h, 0.0, {}};
  for (std::size_t a = 0; a < 3; ++a) {
    const std::size_t b = (a + 1) % 3, c = (a + 2) % 3;
    const SquareMatrix<2> id = SquareMatrix<2>::Identity();
    // eps_abc and eps_acb both contribute, hence the doubled antisymmetric part.
    y.j[a] = mu1 * kron(s[a], id) + mu2 * kron(id, s[a]) -
             (I_unit * h / 4.0) * 2.0 * (kron(s[b], s[c]) - kron(s[c], s[b]));
  }
  return y;
}

// --- angular states ------------------------------------------------------------

[[nodiscard]] inline double polar_angle(const Vec3& k) { return std::acos(std::clamp(k[2], -1.0, 1.0)); }
[[nodiscard]] inline double azimuth(const Vec3& k) { return std::atan2(k[1], k[0]); }

[[nodiscard]] inline Spinor chi_singlet() {
  Spinor v;
  v << 0.0, 1.0, -1.0, 0.0;
  return v / std::sqrt(2.0);
}

/// Triplet chi_{1M}: chi_11 = |uu>, chi_10 = (|ud> + |du>)/sqrt2, chi_1-1 = |dd>.
[[nodiscard]] inline Spinor chi_triplet(int m) {
  Spinor v = Spinor::Zero();
  switch (m) {
    case 1: v(0) = 1.0; break;
    case 0: v(1) = v(2) = 1.0 / std::sqrt(2.0); break;
    case -1: v(3) = 1.0; break;
    default: throw std::invalid_argument("chi_triplet: m must be -1, 0 or 1");
  }
  return v;
}

/// Psi_0(k) = Y_00 (|ud> - |du>)/sqrt2.
[[nodiscard]] inline Spinor psi0(const Vec3&) { return y00() * chi_singlet(); }

/// Psi_1 as (1/sqrt3) [[Y_1-1, -Y_10/sqrt2], [-Y_10/sqrt2, Y_11]].
[[nodiscard]] inline Spinor psi1_harmonic(const Vec3& k) {
  const double th = polar_angle(k), ph = azimuth(k);
  const double r3 = std::sqrt(3.0), r2 = std::sqrt(2.0);
  Spinor v;
  v << y1m(-1, th, ph) / r3, -y1m(0, th, ph) / (r2 * r3), -y1m(0, th, ph) / (r2 * r3),
      y1m(1, th, ph) / r3;
  return v;
}

/// Psi_1 as (1/sqrt(8 pi)) [[k_-, -k_z], [-k_z, -k_+]].
[[nodiscard]] inline Spinor psi1_cartesian(const Vec3& k) {
  const complex kp{k[0], k[1]}, km{k[0], -k[1]};
  Spinor v;
  v << km, -k[2], -k[2], -kp;
  return v / std::sqrt(8.0 * std::numbers::pi);
}

[[nodiscard]] inline SpinMatrix k_dot(const Vec3& k, const std::array<SpinMatrix, 3>& ops) {
  return k[0] * ops[0] + k[1] * ops[1] + k[2] * ops[2];
}

struct IdentityResidual {
  std::string identity;
  double max_residual = 0.0;
  double fitted_ratio = 0.0;  // least-squares c with LHS ~ c RHS; 1 when the identity holds
};

struct YangianReport {
  std::vector<IdentityResidual> identities;
  double max_residual = 0.0;
  std::size_t n_samples = 0;
  double mu1 = 0.0, mu2 = 0.0, h = 0.0, eta = 0.0;
  bool passed = false;
};

namespace detail {

/// Accumulates max ||lhs - rhs|| and the projection ratio <rhs, lhs>/<rhs, rhs>.
struct ResidualAccumulator {
  double max_res = 0.0;
  complex num = 0.0;
  double den = 0.0;
  double lhs2 = 0.0;

  void add(const Spinor& lhs, const Spinor& rhs) {
    max_res = std::max(max_res, (lhs - rhs).cwiseAbs().maxCoeff());
    num += rhs.dot(lhs);
    den += rhs.squaredNorm();
    lhs2 += lhs.squaredNorm();
  }
  [[nodiscard]] double ratio() const {
    if (den > 0.0) return num.real() / den;
    return lhs2 == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
};

inline void finish(YangianReport& rep, double tolerance) {
  rep.max_residual = 0.0;
  for (const auto& r : rep.identities) rep.max_residual = std::max(rep.max_residual, r.max_residual);
  rep.passed = rep.max_residual < tolerance;
}

}  // namespace detail

/// Pointwise check of
///   k_+ J_- Psi_0 = c Y_11 chi_1-1,  k_- J_+ Psi_0 = c Y_1-1 chi_11,
///   k_z J_z Psi_0 = -(c/2) Y_10 chi_10,   c = mu2 - mu1 + h/2.
[[nodiscard]] inline YangianReport verify_eq18(double mu1, double mu2, double h,
                                               const std::vector<Vec3>& samples,
                                               double tolerance = 1e-12) {
  const YangianOp y = build_yangian(mu1, mu2, h);
  const SpinMatrix jp = y.j[0] + I_unit * y.j[1];
  const SpinMatrix jm = y.j[0] - I_unit * y.j[1];
  const double c = y.coefficient();
  detail::ResidualAccumulator plus, minus, zed;
  for (const Vec3& k : samples) {
    const double th = polar_angle(k), ph = azimuth(k);
    const complex kp{k[0], k[1]}, km{k[0], -k[1]};
    const Spinor p0 = psi0(k);
    plus.add(kp * (jm * p0), c * y1m(1, th, ph) * chi_triplet(-1));
    minus.add(km * (jp * p0), c * y1m(-1, th, ph) * chi_triplet(1));
    zed.add(k[2] * (y.j[2] * p0), -0.5 * c * y1m(0, th, ph) * chi_triplet(0));
  }
  YangianReport rep;
  rep.identities = {{"k+ J- Psi0 = c Y11 chi1-1", plus.max_res, plus.ratio()},
                    {"k- J+ Psi0 = c Y1-1 chi11", minus.max_res, minus.ratio()},
                    {"kz Jz Psi0 = -c/2 Y10 chi10", zed.max_res, zed.ratio()}};
  rep.n_samples = samples.size();
  rep.mu1 = mu1;
  rep.mu2 = mu2;
  rep.h = h;
  detail::finish(rep, tolerance);
  return rep;
}

struct TranslationResult {
  double eta = 0.0;
  double residual = 0.0;  // sqrt of the summed squared norm of (k.J') Psi_1
  bool degenerate = false;
};

/// Real eta minimizing Sum_k ||(k.(J + eta S)) Psi_1(k)||^2. When k.S
/// annihilates Psi_1 at every sample the normal equation is singular; eta is
/// then left at zero and the result flagged.
[[nodiscard]] inline TranslationResult find_translation(const YangianOp& y,
                                                        const std::vector<Vec3>& samples) {
  if (y.coefficient() == 0.0)
    throw std::invalid_argument("find_translation: mu2 - mu1 + h/2 must be nonzero");
  const SpinOp s = build_spin_ops();
  double aa = 0.0, ab = 0.0, bb = 0.0;
  for (const Vec3& k : samples) {
    const Spinor p1 = psi1_cartesian(k);
    const Spinor a = k_dot(k, s.total) * p1;
    const Spinor b = k_dot(k, y.j) * p1;
    aa += a.squaredNorm();
    ab += a.dot(b).real();
    bb += b.squaredNorm();
  }
  TranslationResult r;
  if (aa <= 1e-28 * static_cast<double>(samples.size())) {
    r.degenerate = true;
    r.residual = std::sqrt(bb);
    return r;
  }
  r.eta = -ab / aa;
  r.residual = std::sqrt(std::max(0.0, bb + 2.0 * r.eta * ab + r.eta * r.eta * aa));
  return r;
}

/// Pointwise check of (k.J') Psi_0 = (sqrt3/2) c Psi_1 and (k.J') Psi_1 = 0
/// with J' = J + eta S.
[[nodiscard]] inline YangianReport verify_eq19(const YangianOp& y, const std::vector<Vec3>& samples,
                                               double tolerance = 1e-10) {
  const SpinOp s = build_spin_ops();
  const auto jt = y.translated(s);
  const double c = y.coefficient();
  detail::ResidualAccumulator first, second;
  for (const Vec3& k : samples) {
    const SpinMatrix kj = k_dot(k, jt);
    first.add(kj * psi0(k), 0.5 * std::sqrt(3.0) * c * psi1_cartesian(k));
    second.add(kj * psi1_cartesian(k), Spinor::Zero());
  }
  YangianReport rep;
  rep.identities = {{"(k.J') Psi0 = sqrt3/2 c Psi1", first.max_res, first.ratio()},
                    {"(k.J') Psi1 = 0", second.max_res, second.ratio()}};
  rep.n_samples = samples.size();
  rep.mu1 = y.mu1;
  rep.mu2 = y.mu2;
  rep.h = y.h;
  rep.eta = y.eta;
  detail::finish(rep, tolerance);
  return rep;
}

/// Sphere integral of <Psi_1 | k.J' | Psi_0> divided by (sqrt3/2) c.
[[nodiscard]] inline double eq19_coefficient_ratio(const YangianOp& y, int n_theta = 16,
                                                   int n_psi = 16) {
  const SpinOp s = build_spin_ops();
  const auto jt = y.translated(s);
  const AngularGrid grid(n_theta, n_psi);
  complex acc = 0.0;
  for (const AngularNode& node : grid.nodes)
    acc += 4.0 * std::numbers::pi * node.weight * psi1_cartesian(node.n).dot(k_dot(node.n, jt) * psi0(node.n));
  return acc.real() / (0.5 * std::sqrt(3.0) * y.coefficient());
}

}  // namespace so5pw
