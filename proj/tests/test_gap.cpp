#include "so5pw/gap.hpp"
#include "so5pw/meanfield.hpp"

#include <gtest/gtest.h>

using namespace so5pw;

namespace {

constexpr double kPi = std::numbers::pi;

// Continuum values at g = 0.25, omega_c = 1 from 50-digit adaptive quadrature.
constexpr double kOracleDelta0 = 0.036643570325865606;  // 1 / sinh(4)
constexpr double kOracleTc = 0.020767478689713392;

GapModel model(Branch b = Branch::BW, double g = 0.25, double t = 0.0) {
  GapModel m;
  m.coupling = g;
  m.branch = b;
  m.temperature = t;
  return m;
}

// 1 = g Int_0^wc tanh(x / 2T) / x dx on a log-uniform Simpson grid, solved by
// bisection; shares nothing with the library quadrature.
double brute_force_tc(double g, double wc) {
  auto lhs = [&](double t) {
    const int n = 400000;
    const double umax = 60.0, h = umax / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = wc * std::exp(-i * h);  // dx / x = du
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * std::tanh(0.5 * x / t);
    }
    return g * s * h / 3.0;
  };
  double lo = 1e-4 * wc, hi = wc;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (lhs(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(GapBasics, QuasiparticleAndOccupation) {
  EXPECT_EQ(quasiparticle_energy(3, 4), 5.0);
  EXPECT_EQ(quasiparticle_energy(-2.5, 0), 2.5);
  EXPECT_EQ(quasiparticle_energy(0, 1.5), 1.5);
  EXPECT_EQ(occupation(0.0, 1.0, 0.3), 0.5);
  EXPECT_EQ(occupation(0.0, 0.0, 0.0), 0.5);
  EXPECT_EQ(occupation(2.0, 2.0, 0.0), 0.0);
  EXPECT_NEAR(occupation(2.0, 2.0, 1e12), 0.5, 1e-12);
  EXPECT_THROW((void)occupation(1.0, 1.0, -0.1), std::invalid_argument);
}

TEST(Quadrature, GaussLegendreExactness) {
  for (int n : {1, 4, 8, 16}) {
    const auto r = gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
      EXPECT_NEAR(s, p % 2 ? 0.0 : 2.0 / (p + 1), 1e-14) << n << " " << p;
    }
  }
}

TEST(Quadrature, GridsNormalized) {
  const EnergyGrid e(2.0, 8);
  double w = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    EXPECT_NE(e.eps[i], 0.0);
    w += e.weight[i];
  }
  EXPECT_NEAR(w, 4.0, 1e-13);
  const AngularGrid a(16, 16);
  double m[3][3] = {};
  double tot = 0.0;
  for (const auto& n : a.nodes) {
    tot += n.weight;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] += n.weight * n.n[i] * n.n[j];
  }
  EXPECT_NEAR(tot, 1.0, 1e-14);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(m[i][j], i == j ? 1.0 / 3.0 : 0.0, 1e-14);
}

TEST(GapModel, Validation) {
  GapModel m;
  m.n_theta = 4;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = GapModel{};
  m.temperature = -1;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  EXPECT_EQ(parse_branch("non-esp"), Branch::NonESP);
  EXPECT_THROW((void)parse_branch("abm"), std::invalid_argument);
}

TEST(GapKernel, MatchesBruteForceDoubleSum) {
  GapModel m = model();
  m.n_theta = 8;
  m.n_psi = 8;
  m.temperature = 0.01;
  const ShellQuadrature shell(m);
  const auto& nodes = shell.angles().nodes;
  // arbitrary smooth field
  std::vector<CVec3> field(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k)
    field[k] = {0.02 * nodes[k].n[0] + 0.01 * I_unit, 0.03 * nodes[k].n[2] * nodes[k].n[1], complex(0.01, 0.02 * nodes[k].n[0])};
  const auto fast = shell.apply_kernel(field, m.temperature);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    CVec3 s{};
    for (std::size_t kp = 0; kp < nodes.size(); ++kp) {
      double mag2 = 0.0;
      for (const auto& c : field[kp]) mag2 += std::norm(c);
      double ei = 0.0;
      for (std::size_t j = 0; j < shell.energy().size(); ++j) {
        const double e = std::sqrt(shell.energy().eps[j] * shell.energy().eps[j] + mag2);
        ei += shell.energy().weight[j] * std::tanh(e / (2 * m.temperature)) / (2 * e);
      }
      const double v = 3.0 * m.g() * dot(nodes[k].n, nodes[kp].n);
      for (std::size_t j = 0; j < 3; ++j) s[j] += nodes[kp].weight * v * field[kp][j] * ei;
    }
    for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(std::abs(s[j] - fast[k][j]), 1e-13);
  }
}

TEST(GapSolver, TrivialRootAndNormalPhase) {
  EXPECT_EQ(gap_residual(0.0, model()), 0.0);
  const GapSolution hot = solve_gap(model(Branch::BW, 0.25, 0.05));
  EXPECT_EQ(hot.delta0, 0.0);
  EXPECT_TRUE(hot.converged);
}

TEST(GapSolver, ZeroTemperatureClosedForm) {
  for (double g : {0.2, 0.25, 0.3}) {
    const GapSolution s = solve_gap(model(Branch::BW, g));
    EXPECT_TRUE(s.converged);
    EXPECT_NEAR(s.delta0 / (1.0 / std::sinh(1.0 / g)), 1.0, 1e-9) << g;
    EXPECT_LT(std::abs(gap_residual(s.delta0, model(Branch::BW, g))), 1e-10);
  }
  EXPECT_NEAR(solve_gap(model()).delta0 / kOracleDelta0, 1.0, 1e-9);
}

TEST(GapSolver, CriticalTemperatureAgainstIndependentOracles) {
  const double tc = critical_temperature(model());
  EXPECT_NEAR(tc, kOracleTc, 1e-8);
  EXPECT_NEAR(brute_force_tc(0.25, 1.0), kOracleTc, 1e-8);
  EXPECT_NEAR(kOracleDelta0 / kOracleTc, 1.764, 0.01 * 1.764);
}

TEST(GapSolver, MonotoneInTemperature) {
  const double tc = critical_temperature(model());
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const GapSolution s = solve_gap(model(Branch::BW, 0.25, tc * i / 20.0));
    EXPECT_LE(s.delta0, prev);
    EXPECT_GT(s.delta0, 0.0);
    prev = s.delta0;
  }
}

TEST(GapSolver, MonotoneInCoupling) {
  double prev = 0.0;
  for (double g : {0.2, 0.25, 0.3}) {
    const double tc = critical_temperature(model(Branch::BW, g));
    EXPECT_GT(tc, prev);
    prev = tc;
  }
  EXPECT_THROW((void)critical_temperature(model(Branch::BW, 0.05)), WeakCouplingError);
}

TEST(GapSolver, ZeroTemperatureLimit) {
  const double d0 = solve_gap(model()).delta0;
  const double dt = solve_gap(model(Branch::BW, 0.25, 1e-6)).delta0;
  EXPECT_NEAR(dt / d0, 1.0, 1e-4);
}

TEST(GapSolver, CriticalTemperatureTwoWays) {
  const double tc = critical_temperature(model());
  // Delta^2 is linear in T just below Tc; extrapolate it to zero.
  const double t1 = 0.990 * tc, t2 = 0.995 * tc;
  const double d1 = solve_gap(model(Branch::BW, 0.25, t1)).delta0;
  const double d2 = solve_gap(model(Branch::BW, 0.25, t2)).delta0;
  const double t0 = t2 + (t2 - t1) * d2 * d2 / (d1 * d1 - d2 * d2);
  EXPECT_NEAR(t0 / tc, 1.0, 1e-3);
}

TEST(GapSolver, ResidualNearTcFollowsLinearizedKernel) {
  const double tc = critical_temperature(model());
  const ShellQuadrature shell(model(Branch::BW, 0.25, 0.999 * tc));
  const double d = 1e-6;
  const double lin = d * (1.0 - shell.projected_gain(Branch::BW, 0.0, 0.999 * tc));
  EXPECT_NEAR(gap_residual(d, shell), lin, 1e-6 * std::abs(lin));
}

TEST(GapSolver, GridConvergence) {
  for (Branch b : {Branch::BW, Branch::NonESP}) {
    GapModel m = model(b);
    const double base = solve_gap(m).delta0;
    m.n_energy *= 2;
    m.n_theta *= 2;
    m.n_psi *= 2;
    EXPECT_NEAR(solve_gap(m).delta0 / base, 1.0, 1e-4);
  }
}

TEST(GapSolver, BranchProfilesAndSelfConsistency) {
  for (double t : {0.0, 0.01}) {
    for (Branch b : {Branch::BW, Branch::NonESP}) {
      const ShellQuadrature shell(model(b, 0.25, t));
      const GapSolution s = solve_gap(shell);
      ASSERT_GT(s.delta0, 0.0);
      const auto field = shell.branch_field(b, s.delta0);
      const auto rhs = shell.apply_kernel(field, t);
      double worst = 0.0;
      for (std::size_t k = 0; k < field.size(); ++k)
        for (std::size_t j = 0; j < 3; ++j) worst = std::max(worst, std::abs(rhs[k][j] - field[k][j]));
      EXPECT_LT(worst, 1e-8);
      const auto& nodes = shell.angles().nodes;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double expect = s.delta0 * profile_magnitude(b, nodes[k].theta);
        EXPECT_NEAR(s.gap_function[k], expect, 1e-10);
      }
    }
  }
}

TEST(GapSolver, BranchesShareCriticalTemperature) {
  EXPECT_NEAR(critical_temperature(model(Branch::NonESP)), critical_temperature(model()), 1e-12);
}

// A pair at (eps, n) with |Delta| = delta0 has <T> = sin 2r e^{i lambda} d, and the
// kernel integrand Delta tanh / 2E is -<T> tanh / 4 for Delta = -|Delta| e^{i lambda} d / 2.
TEST(GapSolver, MeanFieldConsistency) {
  const GeneratorSet g = build_generators();
  for (double t : {0.0, 0.012}) {
    const ShellQuadrature shell(model(Branch::BW, 0.25, t));
    const GapSolution s = solve_gap(shell);
    const auto& node = shell.angles().nodes[37];
    for (std::size_t j = 0; j < shell.energy().size(); j += 97) {
      const double eps = shell.energy().eps[j];
      const MeanFieldPoint p = bw_point(eps, s.delta0, 0.0, node.theta, node.psi);
      const StateVector psi = coherent_state(coherent_params(p, RotationBranch::GroundState), g);
      const CVec3 tv = expectation_t(psi, g);
      const double e = p.energy();
      for (std::size_t i = 0; i < 3; ++i) {
        const complex integrand = p.delta.delta()[i] * thermal_factor(e, t) / (2.0 * e);
        EXPECT_LT(std::abs(integrand + 0.25 * tv[i] * thermal_factor(e, t)), 1e-8);
      }
    }
  }
}

TEST(FieldComponents, ZeroFieldSymmetryAndY11Shape) {
  const double tc = critical_temperature(model(Branch::NonESP));
  const ShellQuadrature shell(model(Branch::NonESP, 0.25, 0.5 * tc));
  const double d0 = solve_gap(shell).delta0;
  const FieldGapComponents f = field_gap_components(shell, d0, 0.0);
  const auto& nodes = shell.angles().nodes;
  const complex ratio = f.up_up[5] / y1m(1, nodes[5].theta, nodes[5].psi);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    EXPECT_NEAR(std::abs(f.up_up[k]), std::abs(f.down_down[k]), 1e-15);
    EXPECT_LT(std::abs(f.up_up[k] - ratio * y1m(1, nodes[k].theta, nodes[k].psi)), 1e-14);
  }
}

// The printed weights tanh[E'(1 -+ muB/eps')/2T] map into each other under
// eps' -> -eps', and the shell is symmetric in eps', so the two magnitudes stay
// equal at any field.
TEST(FieldComponents, MagnitudesStayEqualOnSymmetricShell) {
  const double tc = critical_temperature(model(Branch::NonESP));
  const ShellQuadrature shell(model(Branch::NonESP, 0.25, 0.5 * tc));
  const double d0 = solve_gap(shell).delta0;
  const FieldGapComponents f0 = field_gap_components(shell, d0, 0.0);
  for (double b : {0.01, 0.02, 0.05}) {
    const FieldGapComponents f = field_gap_components(shell, d0, b);
    double split = 0.0, change = 0.0;
    for (std::size_t k = 0; k < f.up_up.size(); ++k) {
      split = std::max(split, std::abs(std::abs(f.up_up[k]) - std::abs(f.down_down[k])));
      change = std::max(change, std::abs(f.up_up[k] - f0.up_up[k]));
    }
    EXPECT_LT(split, 1e-14);
    EXPECT_GT(change, 0.0);
  }
  EXPECT_THROW((void)field_gap_components(ShellQuadrature(model(Branch::NonESP)), d0, 0.0),
               std::invalid_argument);
}
