#pragma once

// Self-consistent gap equation for the p-wave separable potential
// V_kk' = -3 V1 n.n' inside a particle-hole symmetric shell |eps| < omega_c.
//
// The order parameter is carried as the reduced vector
//   delta(k) = |Delta(k)| e^{i(lambda_k - lambda)} d(k),
// for which the gap equation reads
//   delta(k) = 3 g  Int dOmega'/4pi  (n.n') delta(k') Int deps tanh(E'/2T) / 2E',
// with g = N0 V1 and E' = sqrt(eps^2 + |delta(k')|^2).

#include "so5pw/harmonics.hpp"
#include "so5pw/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace so5pw {

enum class Branch { BW, NonESP };

[[nodiscard]] inline const char* to_string(Branch b) { return b == Branch::BW ? "bw" : "nonesp"; }

[[nodiscard]] inline Branch parse_branch(const std::string& s) {
  if (s == "bw" || s == "BW") return Branch::BW;
  if (s == "nonesp" || s == "non-esp" || s == "NonESP") return Branch::NonESP;
  throw std::invalid_argument("unknown branch '" + s + "' (expected bw or nonesp)");
}

struct GapModel {
  double coupling = 0.25;  // V1
  double omega_c = 1.0;
  double dos = 1.0;  // N0
  double temperature = 0.0;  // kT, energy units
  Branch branch = Branch::BW;
  double mu_b = 0.0;
  int n_energy = 8;  // Gauss-Legendre order per energy panel
  int n_theta = 16;
  int n_psi = 16;

  [[nodiscard]] double g() const { return dos * coupling; }

  void validate() const {
    if (!(coupling > 0.0)) throw std::invalid_argument("GapModel: coupling must be positive");
    if (!(omega_c > 0.0)) throw std::invalid_argument("GapModel: omega_c must be positive");
    if (!(dos > 0.0)) throw std::invalid_argument("GapModel: dos must be positive");
    if (!(temperature >= 0.0)) throw std::invalid_argument("GapModel: temperature must be >= 0");
    if (n_energy < 8 || n_theta < 8 || n_psi < 8)
      throw std::invalid_argument("GapModel: grids need at least 8 points per dimension");
  }
};

struct GapSolution {
  double delta0 = 0.0;
  Branch branch = Branch::BW;
  double temperature = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> gap_function;  // |Delta(k)| regenerated by the kernel on each angular node
};

[[nodiscard]] inline double quasiparticle_energy(double epsilon, double delta_mag) {
  return std::sqrt(epsilon * epsilon + delta_mag * delta_mag);
}

/// tanh(E / 2T); exactly one at T = 0.
[[nodiscard]] inline double thermal_factor(double energy, double temperature) {
  if (temperature < 0.0) throw std::invalid_argument("thermal_factor: negative temperature");
  if (temperature == 0.0) return 1.0;
  return std::tanh(0.5 * energy / temperature);
}

/// <n_k a> = (1 - (eps/E) tanh(E / 2T)) / 2.
[[nodiscard]] inline double occupation(double epsilon, double energy, double temperature) {
  if (temperature < 0.0) throw std::invalid_argument("occupation: negative temperature");
  if (energy == 0.0) return 0.5;
  return 0.5 * (1.0 - epsilon / energy * thermal_factor(energy, temperature));
}

/// Unit-amplitude angular profile of a branch. BW: n. Non-ESP: Y_11(n) z.
[[nodiscard]] inline CVec3 branch_profile(Branch b, const AngularNode& node) {
  if (b == Branch::BW) return {node.n[0], node.n[1], node.n[2]};
  return {0.0, 0.0, y1m(1, node.theta, node.psi)};
}

[[nodiscard]] inline double profile_magnitude(Branch b, double theta) {
  if (b == Branch::BW) return 1.0;
  return std::sqrt(3.0 / (8.0 * std::numbers::pi)) * std::abs(std::sin(theta));
}

/// Discretized Fermi shell: energy and angular rules for one model.
class ShellQuadrature {
 public:
  explicit ShellQuadrature(const GapModel& m)
      : model_(m), energy_(m.omega_c, m.n_energy), angles_(m.n_theta, m.n_psi) {
    m.validate();
  }

  [[nodiscard]] const GapModel& model() const { return model_; }
  [[nodiscard]] const EnergyGrid& energy() const { return energy_; }
  [[nodiscard]] const AngularGrid& angles() const { return angles_; }

  /// Int deps tanh(E/2T) / 2E at fixed |delta|.
  [[nodiscard]] double energy_integral(double delta_mag, double temperature) const {
    double s = 0.0;
    for (std::size_t j = 0; j < energy_.size(); ++j) {
      const double e = quasiparticle_energy(energy_.eps[j], delta_mag);
      s += energy_.weight[j] * thermal_factor(e, temperature) / (2.0 * e);
    }
    return s;
  }

  /// Kernel applied to a field of reduced order parameters on the angular nodes.
  /// n.n' is rank three, so the double sum is carried through the 3x3 moments
  ///   B_ij = Sum' w' n'_i delta_j(k') A(k').
  [[nodiscard]] std::vector<CVec3> apply_kernel(const std::vector<CVec3>& field,
                                                double temperature) const {
    if (field.size() != angles_.size()) throw std::invalid_argument("apply_kernel: size mismatch");
    std::array<CVec3, 3> moments{};
    for (std::size_t k = 0; k < field.size(); ++k) {
      const AngularNode& node = angles_.nodes[k];
      double mag2 = 0.0;
      for (const auto& c : field[k]) mag2 += std::norm(c);
      const double a = energy_integral(std::sqrt(mag2), temperature);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) moments[i][j] += node.weight * node.n[i] * field[k][j] * a;
    }
    std::vector<CVec3> out(field.size());
    const double pref = 3.0 * model_.g();
    for (std::size_t k = 0; k < field.size(); ++k) {
      const AngularNode& node = angles_.nodes[k];
      for (std::size_t j = 0; j < 3; ++j) {
        complex s = 0.0;
        for (std::size_t i = 0; i < 3; ++i) s += node.n[i] * moments[i][j];
        out[k][j] = pref * s;
      }
    }
    return out;
  }

  [[nodiscard]] std::vector<CVec3> branch_field(Branch b, double delta0) const {
    std::vector<CVec3> f(angles_.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
      const CVec3 p = branch_profile(b, angles_.nodes[k]);
      for (std::size_t j = 0; j < 3; ++j) f[k][j] = delta0 * p[j];
    }
    return f;
  }

  /// <phi, K[delta0 phi]> / (delta0 <phi, phi>): the kernel's gain along the
  /// branch profile. Well defined at delta0 = 0 (linearized kernel).
  [[nodiscard]] double projected_gain(Branch b, double delta0, double temperature) const {
    const std::vector<CVec3> phi = branch_field(b, 1.0);
    // Rings share |phi|, so the energy integral is done once per ring.
    std::vector<double> ring_a(angles_.ring_theta.size());
    for (std::size_t r = 0; r < ring_a.size(); ++r)
      ring_a[r] = energy_integral(delta0 * profile_magnitude(b, angles_.ring_theta[r]), temperature);

    std::array<CVec3, 3> moments{};
    for (std::size_t k = 0; k < phi.size(); ++k) {
      const AngularNode& node = angles_.nodes[k];
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          moments[i][j] += node.weight * node.n[i] * phi[k][j] * ring_a[node.ring];
    }
    complex num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < phi.size(); ++k) {
      const AngularNode& node = angles_.nodes[k];
      for (std::size_t j = 0; j < 3; ++j) {
        complex s = 0.0;
        for (std::size_t i = 0; i < 3; ++i) s += node.n[i] * moments[i][j];
        num += node.weight * std::conj(phi[k][j]) * s;
        den += node.weight * std::norm(phi[k][j]);
      }
    }
    return 3.0 * model_.g() * num.real() / den;
  }

 private:
  GapModel model_;
  EnergyGrid energy_;
  AngularGrid angles_;
};

/// delta0 minus the kernel output projected on the branch profile.
[[nodiscard]] inline double gap_residual(double delta0, const ShellQuadrature& shell) {
  const GapModel& m = shell.model();
  return delta0 * (1.0 - shell.projected_gain(m.branch, delta0, m.temperature));
}

[[nodiscard]] inline double gap_residual(double delta0, const GapModel& m) {
  return gap_residual(delta0, ShellQuadrature(m));
}

/// Bisection for the positive root of the projected gap equation on
/// [0, 10 omega_c]. The gain decreases monotonically in delta0, so there is at
/// most one positive root; none means the normal phase.
[[nodiscard]] inline GapSolution solve_gap(const ShellQuadrature& shell) {
  const GapModel& m = shell.model();
  const double tol_res = 1e-10 * m.omega_c;
  const double tol_bracket = 1e-12 * m.omega_c;
  GapSolution sol;
  sol.branch = m.branch;
  sol.temperature = m.temperature;

  auto excess = [&](double d) { return 1.0 - shell.projected_gain(m.branch, d, m.temperature); };
  double lo = 0.0, hi = 10.0 * m.omega_c;
  if (excess(lo) >= 0.0) {
    sol.converged = true;
    sol.gap_function.assign(shell.angles().size(), 0.0);
    return sol;
  }
  if (excess(hi) <= 0.0) throw std::runtime_error("solve_gap: no sign change up to 10 omega_c");

  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    sol.iterations = it + 1;
    const double f = excess(mid);
    if (f < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < tol_bracket && std::abs(mid * f) < tol_res) break;
  }
  sol.delta0 = 0.5 * (lo + hi);
  sol.residual = gap_residual(sol.delta0, shell);
  sol.converged = hi - lo < tol_bracket && std::abs(sol.residual) < tol_res;

  const auto regenerated = shell.apply_kernel(shell.branch_field(m.branch, sol.delta0), m.temperature);
  sol.gap_function.resize(regenerated.size());
  for (std::size_t k = 0; k < regenerated.size(); ++k) {
    double s = 0.0;
    for (const auto& c : regenerated[k]) s += std::norm(c);
    sol.gap_function[k] = std::sqrt(s);
  }
  return sol;
}

[[nodiscard]] inline GapSolution solve_gap(const GapModel& m) { return solve_gap(ShellQuadrature(m)); }

/// Raised when the linearized condition has no root above 1e-6 omega_c.
class WeakCouplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Temperature where the linearized kernel gain along the branch profile is one.
[[nodiscard]] inline double critical_temperature(const ShellQuadrature& shell) {
  const GapModel& m = shell.model();
  auto excess = [&](double t) { return 1.0 - shell.projected_gain(m.branch, 0.0, t); };
  double lo = 1e-6 * m.omega_c, hi = 10.0 * m.omega_c;
  if (excess(lo) >= 0.0)
    throw WeakCouplingError("critical_temperature: Tc below 1e-6 omega_c for g = " +
                            std::to_string(m.g()));
  for (int it = 0; it < 200 && hi - lo > 1e-14 * m.omega_c; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

[[nodiscard]] inline double critical_temperature(const GapModel& m) {
  return critical_temperature(ShellQuadrature(m));
}

struct FieldGapComponents {
  std::vector<complex> up_up;
  std::vector<complex> down_down;
};

/// Equal-spin components in a Zeeman field for the Y_11-shaped gap
/// |Delta(k')| = delta0 |Y_11|, Phi' = psi', lambda = 0:
///   D_uu(k) = (1/4) Sum' V_kk' |Delta'|/2E' e^{i Phi'} tanh[E'(1 - muB/eps')/2T]
/// and D_dd from lambda -> pi + lambda, Phi' -> -Phi', B -> -B, times -1.
/// The energy nodes never include eps' = 0.
[[nodiscard]] inline FieldGapComponents field_gap_components(const ShellQuadrature& shell,
                                                             double delta0, double mu_b) {
  const GapModel& m = shell.model();
  if (!(m.temperature > 0.0))
    throw std::invalid_argument("field_gap_components: temperature must be positive");
  const EnergyGrid& eg = shell.energy();
  for (double e : eg.eps)
    if (e == 0.0) throw std::invalid_argument("field_gap_components: energy grid contains eps = 0");

  const AngularGrid& ag = shell.angles();
  std::vector<double> a_up(ag.ring_theta.size()), a_dn(ag.ring_theta.size()),
      mag(ag.ring_theta.size());
  for (std::size_t r = 0; r < mag.size(); ++r) {
    mag[r] = delta0 * profile_magnitude(Branch::NonESP, ag.ring_theta[r]);
    double su = 0.0, sd = 0.0;
    for (std::size_t j = 0; j < eg.size(); ++j) {
      const double e = quasiparticle_energy(eg.eps[j], mag[r]);
      su += eg.weight[j] * std::tanh(0.5 * e * (1.0 - mu_b / eg.eps[j]) / m.temperature) / (2.0 * e);
      sd += eg.weight[j] * std::tanh(0.5 * e * (1.0 + mu_b / eg.eps[j]) / m.temperature) / (2.0 * e);
    }
    a_up[r] = su;
    a_dn[r] = sd;
  }
  std::array<complex, 3> mu{}, md{};
  for (const AngularNode& node : ag.nodes) {
    const complex ph = std::polar(1.0, node.psi);
    for (std::size_t i = 0; i < 3; ++i) {
      mu[i] += node.weight * node.n[i] * mag[node.ring] * ph * a_up[node.ring];
      md[i] += node.weight * node.n[i] * mag[node.ring] * std::conj(ph) * a_dn[node.ring];
    }
  }
  const double pref = -0.75 * m.g();
  FieldGapComponents out;
  for (const AngularNode& node : ag.nodes) {
    complex su = 0.0, sd = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      su += node.n[i] * mu[i];
      sd += node.n[i] * md[i];
    }
    out.up_up.push_back(pref * su);
    out.down_down.push_back(pref * sd);
  }
  return out;
}

}  // namespace so5pw
