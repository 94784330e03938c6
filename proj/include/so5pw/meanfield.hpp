#pragma once

// Linearized pair Hamiltonian H(k) = eps Q + Delta.T+ + Delta*.T, the SO(5)
// coherent rotation that diagonalizes it, and the coherent ground state.
//
// State notation: |a,b> is the pair state with spin a at +k and spin b at -k,
// defined as a+_{-k b} a+_{k a} |0,0>, and |ud,ud> = a+_{k u} a+_{k d} a+_{-k u} a+_{-k d} |0,0>.
// With the Fock ordering of fock.hpp, |a,b> is minus the bitmask basis vector.

#include "so5pw/harmonics.hpp"
#include "so5pw/so5.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace so5pw {

inline constexpr double kDiagTolerance = 1e-10;

/// Complex triplet order parameter Delta(k) with its polar form
/// Delta = -(1/2) |Delta| e^{i lambda} d(Theta, Phi).
class DVector {
 public:
  DVector() = default;
  explicit DVector(const CVec3& delta) : delta_(delta) { decompose(); }

  [[nodiscard]] static DVector from_polar(double magnitude, double lambda, double theta,
                                          double phi) {
    if (magnitude < 0.0) throw std::invalid_argument("DVector: negative magnitude");
    const Vec3 d = unit_vector(theta, phi);
    const complex c = -0.5 * magnitude * std::polar(1.0, lambda);
    DVector v;
    v.delta_ = {c * d[0], c * d[1], c * d[2]};
    v.magnitude_ = magnitude;
    v.lambda_ = wrap(lambda);
    v.theta_ = theta;
    v.phi_ = phi;
    return v;
  }

  [[nodiscard]] const CVec3& delta() const { return delta_; }
  [[nodiscard]] double magnitude() const { return magnitude_; }
  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] double theta() const { return theta_; }
  [[nodiscard]] double phi() const { return phi_; }
  [[nodiscard]] Vec3 direction() const { return unit_vector(theta_, phi_); }

 private:
  static double wrap(double x) {
    const double two_pi = 2.0 * std::numbers::pi;
    x = std::fmod(x, two_pi);
    return x < 0.0 ? x + two_pi : x;
  }

  // Only unitary order parameters (a common phase times a real vector) have
  // the polar form; anything else is rejected.
  void decompose() {
    complex vv = 0.0;
    double nn = 0.0;
    for (const auto& c : delta_) {
      vv += c * c;
      nn += std::norm(c);
    }
    if (nn == 0.0) {
      magnitude_ = lambda_ = theta_ = phi_ = 0.0;
      return;
    }
    if (std::abs(std::abs(vv) - nn) > 1e-12 * nn)
      throw std::invalid_argument("DVector: order parameter is not a phase times a real vector");
    const double phase = 0.5 * std::arg(vv);
    Vec3 u{};
    for (std::size_t i = 0; i < 3; ++i) u[i] = (delta_[i] * std::polar(1.0, -phase)).real();
    const double len = norm(u);
    magnitude_ = 2.0 * len;
    lambda_ = wrap(phase + std::numbers::pi);
    theta_ = std::acos(std::clamp(u[2] / len, -1.0, 1.0));
    phi_ = std::atan2(u[1], u[0]);
  }

  CVec3 delta_{};
  double magnitude_ = 0.0;
  double lambda_ = 0.0;
  double theta_ = 0.0;
  double phi_ = 0.0;
};

struct MeanFieldPoint {
  double epsilon = 0.0;
  DVector delta;

  [[nodiscard]] double energy() const {
    const double m = delta.magnitude();
    return std::sqrt(epsilon * epsilon + m * m);
  }
};

struct CoherentParams {
  double r = 0.0;
  double lambda = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  [[nodiscard]] complex xi() const { return std::polar(r, lambda); }
  [[nodiscard]] Vec3 direction() const { return unit_vector(theta, phi); }
};

/// Which solution of tan 2r = |Delta| / eps to take.
///  GroundState:   2r = atan2(|Delta|, eps) in [0, pi]; W|vac> is the ground
///                 state and W+ H W = +E Q.
///  Diagonalizing: 2r = atan2(|Delta|, eps) + pi; W+ H W = -E Q.
enum class RotationBranch { GroundState, Diagonalizing };

[[nodiscard]] inline CoherentParams coherent_params(const MeanFieldPoint& p,
                                                    RotationBranch branch) {
  double r = 0.5 * std::atan2(p.delta.magnitude(), p.epsilon);
  if (branch == RotationBranch::Diagonalizing) r += 0.5 * std::numbers::pi;
  return {r, p.delta.lambda(), p.delta.theta(), p.delta.phi()};
}

[[nodiscard]] inline DenseComplexMatrix build_hk(const MeanFieldPoint& p, const GeneratorSet& g) {
  DenseComplexMatrix h = p.epsilon * g.q;
  for (int i = 0; i < 3; ++i) {
    const complex d = p.delta.delta()[static_cast<std::size_t>(i)];
    h += d * g.Tdag(i) + std::conj(d) * g.T(i);
  }
  return h;
}

/// W = exp(xi d.T+ - h.c.).
[[nodiscard]] inline DenseComplexMatrix coherent_operator(const CoherentParams& c,
                                                          const GeneratorSet& g) {
  const Vec3 d = c.direction();
  DenseComplexMatrix x = DenseComplexMatrix::Zero();
  for (int i = 0; i < 3; ++i) x += d[static_cast<std::size_t>(i)] * g.Tdag(i);
  x *= c.xi();
  return matrix_exponential<static_cast<int>(kFockDim)>(x - x.adjoint());
}

struct DiagReport {
  double epsilon = 0.0;
  double delta_magnitude = 0.0;
  std::array<double, 3> angles{};  // lambda, Theta, Phi
  double r = 0.0;
  double energy = 0.0;
  double residual = 0.0;              // ||W+ H W + E Q||, diagonalizing branch
  double ground_branch_residual = 0.0;  // ||W0+ H W0 - E Q||, ground-state branch
  bool passed = false;
};

[[nodiscard]] inline DiagReport verify_diagonalization(const MeanFieldPoint& p,
                                                       const GeneratorSet& g,
                                                       double tolerance = kDiagTolerance) {
  const DenseComplexMatrix h = build_hk(p, g);
  const double e = p.energy();
  const CoherentParams c = coherent_params(p, RotationBranch::Diagonalizing);
  const DenseComplexMatrix w = coherent_operator(c, g);
  const DenseComplexMatrix w0 = coherent_operator(coherent_params(p, RotationBranch::GroundState), g);

  DiagReport rep;
  rep.epsilon = p.epsilon;
  rep.delta_magnitude = p.delta.magnitude();
  rep.angles = {c.lambda, c.theta, c.phi};
  rep.r = c.r;
  rep.energy = e;
  rep.residual = max_norm(w.adjoint() * h * w + e * g.q);
  rep.ground_branch_residual = max_norm(w0.adjoint() * h * w0 - e * g.q);
  rep.passed = rep.residual < tolerance;
  return rep;
}

/// Sorted eigenvalues of a Hermitian matrix.
[[nodiscard]] inline Eigen::VectorXd hermitian_spectrum(const DenseComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// --- coherent states ---------------------------------------------------------

/// Fock-basis vector of the pair ket |a,b> (spin a at +k, spin b at -k).
[[nodiscard]] inline StateVector pair_ket(Spin a, Spin b) {
  const std::size_t mask = basis_index(a == Spin::Up, a == Spin::Down, b == Spin::Up,
                                       b == Spin::Down);
  return -basis_state(mask);
}

[[nodiscard]] inline StateVector full_ket() { return basis_state(kFockDim - 1); }

/// W|vac>.
[[nodiscard]] inline StateVector coherent_state(const CoherentParams& c, const GeneratorSet& g) {
  return coherent_operator(c, g) * vacuum();
}

/// Closed-form expansion
///   cos^2 r |0,0> - e^{2i lambda} sin^2 r |ud,ud>
///   + (i/2) e^{i lambda} sin 2r { cos Theta (|u,d> + |d,u>)
///                                 - sin Theta e^{-i Phi} |u,u> + sin Theta e^{i Phi} |d,d> }.
[[nodiscard]] inline StateVector coherent_state_closed_form(const CoherentParams& c) {
  const double cr = std::cos(c.r), sr = std::sin(c.r);
  const complex e1 = std::polar(1.0, c.lambda);
  const complex pair = 0.5 * I_unit * e1 * std::sin(2.0 * c.r);
  const double ct = std::cos(c.theta), st = std::sin(c.theta);
  StateVector v = cr * cr * vacuum() - e1 * e1 * sr * sr * full_ket();
  v += pair * (ct * (pair_ket(Spin::Up, Spin::Down) + pair_ket(Spin::Down, Spin::Up)) -
               st * std::polar(1.0, -c.phi) * pair_ket(Spin::Up, Spin::Up) +
               st * std::polar(1.0, c.phi) * pair_ket(Spin::Down, Spin::Down));
  return v;
}

/// <psi| T_i |psi> for i = x, y, z.
[[nodiscard]] inline CVec3 expectation_t(const StateVector& psi, const GeneratorSet& g) {
  CVec3 out{};
  for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = psi.dot(g.T(i) * psi);
  return out;
}

/// sin 2r e^{i lambda} d.
[[nodiscard]] inline CVec3 expected_t_formula(const CoherentParams& c) {
  const Vec3 d = c.direction();
  const complex s = std::sin(2.0 * c.r) * std::polar(1.0, c.lambda);
  return {s * d[0], s * d[1], s * d[2]};
}

/// c-number offset E*(k) = eps - Delta . <T+>.
[[nodiscard]] inline complex mean_field_offset(const MeanFieldPoint& p, const StateVector& psi,
                                               const GeneratorSet& g) {
  complex s = 0.0;
  for (int i = 0; i < 3; ++i)
    s += p.delta.delta()[static_cast<std::size_t>(i)] * psi.dot(g.Tdag(i) * psi);
  return p.epsilon - s;
}

/// Balian-Werthamer pair state at momentum direction (theta, psi), written with
/// (E +- eps)/2E prefactors and Y_1m; d(n) = n.
[[nodiscard]] inline StateVector bw_state(double epsilon, double gap, double lambda, double theta,
                                          double psi) {
  const double e = std::sqrt(epsilon * epsilon + gap * gap);
  const complex e1 = std::polar(1.0, lambda);
  const double s = std::sqrt(8.0 * std::numbers::pi / 3.0);
  StateVector v = (e + epsilon) / (2.0 * e) * vacuum() -
                  e1 * e1 * (e - epsilon) / (2.0 * e) * full_ket();
  const complex pref = -e1 * I_unit * gap / (2.0 * e) * s;
  v += pref * (y1m(1, theta, psi) * pair_ket(Spin::Down, Spin::Down) -
               y1m(0, theta, psi) / std::sqrt(2.0) *
                   (pair_ket(Spin::Up, Spin::Down) + pair_ket(Spin::Down, Spin::Up)) +
               y1m(-1, theta, psi) * pair_ket(Spin::Up, Spin::Up));
  return v;
}

[[nodiscard]] inline MeanFieldPoint bw_point(double epsilon, double gap, double lambda,
                                             double theta, double psi) {
  return {epsilon, DVector::from_polar(gap, lambda, theta, psi)};
}

/// Non-ESP pair state: |Delta| e^{i(lambda + pi/2)} = amplitude * Y_11(theta, psi)
/// with d = z. The doubly occupied amplitude is -e^{2i lambda}(E - eps)/2E.
[[nodiscard]] inline MeanFieldPoint nonesp_point(double epsilon, double theta, double psi,
                                                 double amplitude = 1.0) {
  const complex z = amplitude * y1m(1, theta, psi);
  const double mag = std::abs(z);
  const double lambda = mag > 0.0 ? std::arg(z) - 0.5 * std::numbers::pi : 0.0;
  return {epsilon, DVector::from_polar(mag, lambda, 0.0, 0.0)};
}

[[nodiscard]] inline StateVector nonesp_state(double epsilon, double theta, double psi,
                                              double amplitude = 1.0) {
  const MeanFieldPoint p = nonesp_point(epsilon, theta, psi, amplitude);
  const double e = p.energy();
  const complex z = amplitude * y1m(1, theta, psi);
  const complex e2 = std::polar(1.0, 2.0 * p.delta.lambda());
  StateVector v = (e + epsilon) / (2.0 * e) * vacuum() - e2 * (e - epsilon) / (2.0 * e) * full_ket();
  v += z / (2.0 * e) * (pair_ket(Spin::Up, Spin::Down) + pair_ket(Spin::Down, Spin::Up));
  return v;
}

// --- magnetic field ----------------------------------------------------------

/// H(k) - muB (n_{k up} - n_{k dn} + n_{-k up} - n_{-k dn}).
[[nodiscard]] inline DenseComplexMatrix field_hamiltonian(const MeanFieldPoint& p, double mu_b,
                                                          const GeneratorSet& g) {
  DenseComplexMatrix zeeman = DenseComplexMatrix::Zero();
  for (const auto& m : kAllModes)
    zeeman += (m.spin == Spin::Up ? 1.0 : -1.0) * number_op(m);
  return build_hk(p, g) - mu_b * zeeman;
}

/// The diagonal form claimed for the rotated field Hamiltonian:
///   E/2 (1 + muB/eps)(n_{k dn} + n_{-k dn}) + E/2 (1 - muB/eps)(n_{k up} + n_{-k up}) - E.
[[nodiscard]] inline DenseComplexMatrix claimed_field_diagonal(double epsilon, double energy,
                                                               double mu_b) {
  if (epsilon == 0.0) throw std::domain_error("claimed_field_diagonal: singular at eps = 0");
  DenseComplexMatrix d = -energy * identity();
  for (const auto& m : kAllModes) {
    const double f = m.spin == Spin::Down ? 1.0 + mu_b / epsilon : 1.0 - mu_b / epsilon;
    d += 0.5 * energy * f * number_op(m);
  }
  return d;
}

struct FieldReport {
  double epsilon = 0.0;
  double delta_magnitude = 0.0;
  double mu_b = 0.0;
  std::array<double, 3> angles{};
  double residual = 0.0;      // ||W+ H_B W - claimed||
  double off_diagonal = 0.0;  // largest off-diagonal entry of W+ H_B W
  bool singular = false;
  bool passed = false;
};

/// Rotates H_B with the ground-state-branch coherent operator of the zero-field
/// point (the branch whose B = 0 limit is the claimed form) and records the
/// distance to the claimed diagonal form. Refuses eps = 0.
[[nodiscard]] inline FieldReport verify_field_diagonalization(const MeanFieldPoint& p, double mu_b,
                                                              const GeneratorSet& g,
                                                              double tolerance = kDiagTolerance) {
  FieldReport rep;
  rep.epsilon = p.epsilon;
  rep.delta_magnitude = p.delta.magnitude();
  rep.mu_b = mu_b;
  const CoherentParams c = coherent_params(p, RotationBranch::GroundState);
  rep.angles = {c.lambda, c.theta, c.phi};
  if (p.epsilon == 0.0) {
    rep.singular = true;
    return rep;
  }
  const DenseComplexMatrix w = coherent_operator(c, g);
  const DenseComplexMatrix rotated = w.adjoint() * field_hamiltonian(p, mu_b, g) * w;
  rep.residual = max_norm(rotated - claimed_field_diagonal(p.epsilon, p.energy(), mu_b));
  DenseComplexMatrix off = rotated;
  off.diagonal().setZero();
  rep.off_diagonal = max_norm(off);
  rep.passed = rep.residual < tolerance;
  return rep;
}

}  // namespace so5pw
