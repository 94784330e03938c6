// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "so5pw/report.hpp"
#include "support.hpp"

#include <iostream>

using namespace so5pw;
using testing_support::random_point;

namespace {

// Continuum oracle for g = 0.25, omega_c = 1 (50-digit adaptive quadrature,
// computed before the solver existed).
constexpr double kOracleDelta0 = 0.036643570325865606;
constexpr double kOracleTc = 0.020767478689713392;
constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << '\n';
  if (!ok) ++failures;
}

std::string fmt(double x) { return format_double(x); }

void criterion1(const GeneratorSet& g) {
  const SO5Matrix m = assemble_so5(g);
  const ClosureReport printed = verify_so5_closure(m, StructureSign::MinusI);
  const ClosureReport flipped = verify_so5_closure(m, StructureSign::PlusI);
  report(1, printed.passed,
         "SO(5) closure with printed -i, max_residual=" + fmt(printed.max_residual) +
             " tol=1e-12 (with +i: " + fmt(flipped.max_residual) + ")");
}

void criterion2(const GeneratorSet& g) {
  const QuasispinReport q = verify_quasispin(g);
  report(2, q.max_residual < 1e-12 && q.max_spin_commutator > 0.1,
         "quasi-spin SU(2) residual=" + fmt(q.max_residual) +
             " max|[Lambda,S(k)]|=" + fmt(q.max_spin_commutator));
}

void criterion3(const GeneratorSet& g) {
  Sampler s(3);
  double worst = 0.0;
  bool exact_e = true;
  for (int i = 0; i < 100; ++i) {
    const MeanFieldPoint p = random_point(s);
    const DiagReport r = verify_diagonalization(p, g);
    worst = std::max(worst, r.residual);
    const double m = p.delta.magnitude();
    exact_e = exact_e && r.energy == std::sqrt(p.epsilon * p.epsilon + m * m);
  }
  report(3, worst < 1e-10 && exact_e, "diagonalization over 100 points, max_residual=" + fmt(worst));
}

void criterion4(const GeneratorSet& g) {
  double amp = 0.0, tdev = 0.0;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      for (int t = 0; t < 10; ++t)
        for (int p = 0; p < 10; ++p) {
          const CoherentParams c{0.5 * kPi * a / 9.0, 2.0 * kPi * b / 10.0, kPi * t / 9.0, 2.0 * kPi * p / 10.0};
          const StateVector w = coherent_state(c, g);
          amp = std::max(amp, (w - coherent_state_closed_form(c)).cwiseAbs().maxCoeff());
          const CVec3 et = expectation_t(w, g), ef = expected_t_formula(c);
          for (std::size_t i = 0; i < 3; ++i) tdev = std::max(tdev, std::abs(et[i] - ef[i]));
        }
  report(4, amp < 1e-10 && tdev < 1e-10,
         "coherent state on 10^4 grid, amplitude dev=" + fmt(amp) + " <T> dev=" + fmt(tdev));
}

void criterion5() {
  GapModel m;
  const ShellQuadrature shell(m);
  const GapSolution s = solve_gap(shell);
  const auto field = shell.branch_field(Branch::BW, s.delta0);
  const auto rhs = shell.apply_kernel(field, 0.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < field.size(); ++k)
    for (std::size_t j = 0; j < 3; ++j) worst = std::max(worst, std::abs(rhs[k][j] - field[k][j]));
  m.temperature = 1e-6 * m.omega_c;
  const double dt = solve_gap(m).delta0;
  const double rel = std::abs(dt / s.delta0 - 1.0);
  report(5, worst < 1e-8 * m.omega_c && rel < 1e-4,
         "BW self-consistency nodewise=" + fmt(worst) + " T=0 vs T->0 rel=" + fmt(rel));
}

void criterion6() {
  GapModel m;
  const double d0 = solve_gap(m).delta0;
  const double tc = critical_temperature(m);
  const double ratio = d0 / tc;
  const double oracle_ratio = kOracleDelta0 / kOracleTc;
  const bool ok = std::abs(ratio / 1.764 - 1.0) < 0.01 && std::abs(oracle_ratio / 1.764 - 1.0) < 0.01 &&
                  std::abs(d0 / kOracleDelta0 - 1.0) < 1e-6 && std::abs(tc / kOracleTc - 1.0) < 1e-6;
  report(6, ok, "Delta0/kTc=" + fmt(ratio) + " oracle=" + fmt(oracle_ratio) + " target 1.764 +-1%");
}

void criterion7() {
  GapModel m;
  m.branch = Branch::NonESP;
  const ShellQuadrature shell(m);
  const GapSolution s = solve_gap(shell);
  const double norm = s.delta0 * std::sqrt(3.0 / (8.0 * kPi));
  double worst = 0.0;
  const auto& nodes = shell.angles().nodes;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    worst = std::max(worst, std::abs(s.gap_function[k] / norm - std::abs(std::sin(nodes[k].theta))));
  report(7, s.delta0 > 0.0 && worst < 1e-10, "non-ESP profile vs |sin theta|, max dev=" + fmt(worst));
}

void criterion8(const GeneratorSet& g) {
  Sampler s(8);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100; ++i) {
    const EquivReport r = kernel_equivalence(s.direction(), g);
    lo = std::min(lo, r.residual);
    hi = std::max(hi, r.residual);
  }
  // repeat for determinism
  Sampler s2(8);
  double hi2 = 0.0;
  for (int i = 0; i < 100; ++i) hi2 = std::max(hi2, kernel_equivalence(s2.direction(), g).residual);
  report(8, hi - lo < 1e-10 && hi < 1e-10 && hi == hi2,
         "dipole kernel equivalence over 100 q, max residual=" + fmt(hi) + " spread=" + fmt(hi - lo));
}

void criterion9() {
  Sampler s(9);
  std::vector<Vec3> ks;
  for (int i = 0; i < 100; ++i) ks.push_back(s.direction_off_pole());
  const YangianReport r18 = verify_eq18(0.0, 1.0, 0.0, ks);
  YangianOp y = build_yangian(0.0, 1.0, 0.0);
  const TranslationResult t = find_translation(y, ks);
  y.eta = t.eta;
  const YangianReport r19 = verify_eq19(y, ks);
  const double ratio = eq19_coefficient_ratio(y);
  const YangianReport d18 = verify_eq18(0.5, 0.5, 0.0, ks);
  const YangianReport d19 = verify_eq19(build_yangian(0.5, 0.5, 0.0), ks);
  // k.S Psi_1 is zero analytically; its floating-point value is ~1e-17
  const bool degenerate_ok = d18.max_residual == 0.0 && d19.identities[0].max_residual == 0.0 &&
                             d19.identities[1].max_residual < 1e-15;
  const bool ok = r18.max_residual < 1e-12 && r19.max_residual < 1e-10 &&
                  std::abs(ratio - 1.0) < 1e-10 && degenerate_ok;
  report(9, ok,
         "Yangian eq18 residual=" + fmt(r18.max_residual) + " eq19 residual=" + fmt(r19.max_residual) +
             " coefficient ratio/(sqrt3/2 c)=" + fmt(ratio) +
             (t.degenerate ? " translation degenerate" : " eta=" + fmt(t.eta)) +
             " degenerate-case zeros=" + (degenerate_ok ? "yes" : "no"));
}

std::string field_report(const GeneratorSet& g, std::uint64_t seed, int& holding) {
  Sampler s(seed);
  json arr = json::array();
  holding = 0;
  for (int i = 0; i < 20; ++i) {
    double eps = 0.0;
    while (eps == 0.0) eps = s.uniform(-5.0, 5.0);
    MeanFieldPoint p = random_point(s);
    p.epsilon = eps;
    const FieldReport r = verify_field_diagonalization(p, s.uniform(-0.5, 0.5), g);
    holding += r.passed ? 1 : 0;
    arr.push_back(to_json(r));
  }
  return arr.dump();
}

void criterion10(const GeneratorSet& g) {
  int h1 = 0, h2 = 0;
  const std::string a = field_report(g, 10, h1);
  const std::string b = field_report(g, 10, h2);
  report(10, !a.empty() && a == b,
         "field-claim report reproducible (claim holds at " + std::to_string(h1) + "/20 points)");
}

void criterion11() {
  using testing_support::run_cli;
  using testing_support::slurp;
  using testing_support::temp_path;
  const std::vector<std::string> runs{
      "verify-algebra", "verify-meanfield", "solve-gap --format csv", "solve-gap",
      "sweep-temperature --n 20 --format csv", "field-sweep", "dipole-check", "yangian-check"};
  bool ok = true;
  std::string bad;
  for (const auto& r : runs) {
    const std::string a = temp_path("acc_a.out"), b = temp_path("acc_b.out");
    std::remove(a.c_str());
    std::remove(b.c_str());
    run_cli(r + " --seed 11 --output " + a);
    run_cli(r + " --seed 11 --output " + b);
    const std::string sa = slurp(a);
    if (sa.empty() || sa != slurp(b)) {
      ok = false;
      bad += " [" + r + "]";
    }
  }
  report(11, ok, "CLI outputs byte-identical across reruns for " + std::to_string(runs.size()) +
                     " configurations" + bad);
}

}  // namespace

int main() {
  const GeneratorSet g = build_generators();
  criterion1(g);
  criterion2(g);
  criterion3(g);
  criterion4(g);
  criterion5();
  criterion6();
  criterion7();
  criterion8(g);
  criterion9();
  criterion10(g);
  criterion11();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
