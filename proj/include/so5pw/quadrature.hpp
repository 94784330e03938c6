#pragma once

// Quadrature rules for the Fermi-shell integrals.

#include "so5pw/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace so5pw {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
[[nodiscard]] inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  QuadratureRule q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    q.nodes[lo] = -x;
    q.nodes[hi] = x;
    q.weights[lo] = q.weights[hi] = w;
  }
  return q;
}

/// Composite Gauss-Legendre rule on [-omega_c, omega_c]. Each half is split
/// into panels whose widths double from 2^-levels * omega_c at the Fermi
/// surface up to the cutoff, so the 1/E peak of width |Delta| or kT is
/// resolved for any gap down to ~omega_c * 2^-levels. No node sits at eps = 0.
struct EnergyGrid {
  std::vector<double> eps;
  std::vector<double> weight;

  EnergyGrid(double omega_c, int order, int levels = 36) {
    if (!(omega_c > 0.0)) throw std::invalid_argument("EnergyGrid: cutoff must be positive");
    if (order < 1 || levels < 1) throw std::invalid_argument("EnergyGrid: non-positive grid");
    const QuadratureRule gl = gauss_legendre(order);
    std::vector<double> edges{0.0};
    for (int l = levels; l >= 0; --l) edges.push_back(std::ldexp(omega_c, -l));
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      const double mid = 0.5 * (edges[p] + edges[p + 1]);
      const double half = 0.5 * (edges[p + 1] - edges[p]);
      for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
        const double x = mid + half * gl.nodes[j];
        const double w = half * gl.weights[j];
        eps.push_back(x);
        weight.push_back(w);
        eps.push_back(-x);
        weight.push_back(w);
      }
    }
  }

  [[nodiscard]] std::size_t size() const { return eps.size(); }
};

struct AngularNode {
  double theta = 0.0;
  double psi = 0.0;
  Vec3 n{};
  double weight = 0.0;  // weight of dOmega / 4pi; all weights sum to one
  std::size_t ring = 0;  // index of the theta ring
};

/// Gauss-Legendre in cos(theta) times the uniform trapezoid rule in psi.
struct AngularGrid {
  std::vector<AngularNode> nodes;
  std::vector<double> ring_theta;
  std::vector<double> ring_weight;  // marginal weight of each ring in dOmega/4pi
  int n_psi = 0;

  AngularGrid(int n_theta, int n_psi_) : n_psi(n_psi_) {
    if (n_theta < 1 || n_psi_ < 1) throw std::invalid_argument("AngularGrid: non-positive grid");
    const QuadratureRule gl = gauss_legendre(n_theta);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double theta = std::acos(gl.nodes[i]);
      ring_theta.push_back(theta);
      ring_weight.push_back(0.5 * gl.weights[i]);
      for (int j = 0; j < n_psi; ++j) {
        const double psi = 2.0 * std::numbers::pi * j / n_psi;
        nodes.push_back({theta, psi, unit_vector(theta, psi), 0.5 * gl.weights[i] / n_psi, i});
      }
    }
  }

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

}  // namespace so5pw
