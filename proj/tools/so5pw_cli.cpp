// so5pw command-line front end.
//
//   so5pw verify-algebra
//   so5pw solve-gap --branch bw --g 0.25 --omega-c 1 --T 0 --format csv
//   so5pw sweep-temperature --n 20 --output sweep.csv --format csv
//   so5pw --config run.json --seed 7
//
// Exit status: 0 all checks within tolerance, 1 usage or I/O error,
// 2 at least one check out of tolerance.

#include "so5pw/report.hpp"
#include "so5pw/random.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace {

using namespace so5pw;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitTolerance = 2;

const std::set<std::string> kCommands{"verify-algebra", "verify-meanfield", "solve-gap",
                                      "sweep-temperature", "field-sweep", "dipole-check",
                                      "yangian-check"};

struct RunConfig {
  std::string command;
  std::uint64_t seed = 20240601;
  std::string output;
  std::string format = "json";
  double g = 0.25;
  double omega_c = 1.0;
  double dos = 1.0;
  double T = 0.0;
  std::string branch = "bw";
  double muB = 0.0;
  double mu1 = 0.0;
  double mu2 = 1.0;
  double h = 0.0;
  int n = 20;
  int n_energy = 8;
  int n_theta = 16;
  int n_psi = 16;

  [[nodiscard]] GapModel model() const {
    GapModel m;
    m.coupling = g / dos;
    m.omega_c = omega_c;
    m.dos = dos;
    m.temperature = T;
    m.branch = parse_branch(branch);
    m.mu_b = muB;
    m.n_energy = n_energy;
    m.n_theta = n_theta;
    m.n_psi = n_psi;
    return m;
  }

  void validate() const {
    if (!kCommands.count(command)) throw std::invalid_argument("unknown command '" + command + "'");
    if (format != "json" && format != "csv") throw std::invalid_argument("format must be json or csv");
    if (!(g > 0.0 && g < 1.0)) throw std::invalid_argument("g must lie in (0, 1)");
    if (!(omega_c > 0.0)) throw std::invalid_argument("omega_c must be positive");
    if (!(dos > 0.0)) throw std::invalid_argument("dos must be positive");
    if (!(T >= 0.0)) throw std::invalid_argument("T must be non-negative");
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    model().validate();
  }
};

/// Flat JSON config; every key must be known.
void load_config(const std::string& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  const auto j = nlohmann::json::parse(in);
  if (!j.is_object()) throw std::invalid_argument("config must be a flat JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "command") c.command = v.get<std::string>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "output") c.output = v.get<std::string>();
    else if (key == "format") c.format = v.get<std::string>();
    else if (key == "g") c.g = v.get<double>();
    else if (key == "omega_c") c.omega_c = v.get<double>();
    else if (key == "dos") c.dos = v.get<double>();
    else if (key == "T") c.T = v.get<double>();
    else if (key == "branch") c.branch = v.get<std::string>();
    else if (key == "muB") c.muB = v.get<double>();
    else if (key == "mu1") c.mu1 = v.get<double>();
    else if (key == "mu2") c.mu2 = v.get<double>();
    else if (key == "h") c.h = v.get<double>();
    else if (key == "n") c.n = v.get<int>();
    else if (key == "n_energy") c.n_energy = v.get<int>();
    else if (key == "n_theta") c.n_theta = v.get<int>();
    else if (key == "n_psi") c.n_psi = v.get<int>();
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

// One row per check; becomes the "checks" array (json) or the table (csv).
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool asserted = true;  // report-only checks never change the exit status
};

struct Outcome {
  json body = json::object();
  std::vector<Check> checks;
  std::string csv;  // set when the command has its own tabular form
};

void summarize(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    const char* tag = !c.asserted ? "INFO" : (c.passed ? "PASS" : "FAIL");
    std::cout << tag << ' ' << c.name << " value=" << format_double(c.value)
              << " tol=" << format_double(c.tolerance) << '\n';
  }
}

std::string checks_csv(const std::vector<Check>& checks) {
  std::ostringstream os;
  os << "check,value,tolerance,passed,asserted\n";
  for (const auto& c : checks)
    os << c.name << ',' << format_double(c.value) << ',' << format_double(c.tolerance) << ','
       << (c.passed ? 1 : 0) << ',' << (c.asserted ? 1 : 0) << '\n';
  return os.str();
}

Outcome verify_algebra(const RunConfig&) {
  const GeneratorSet g = build_generators();
  const SO5Matrix m = assemble_so5(g);
  Outcome o;
  const auto printed = verify_so5_closure(m, StructureSign::MinusI);
  const auto flipped = verify_so5_closure(m, StructureSign::PlusI);
  const auto qs = verify_quasispin(g);

  const DenseComplexMatrix cas = so5_casimir(m);
  double cas_res = 0.0, herm = 0.0;
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b) {
      cas_res = std::max(cas_res, max_norm(commutator<16>(cas, m(a, b))));
      herm = std::max(herm, max_norm(m(a, b) - m(a, b).adjoint()));
    }
  double su2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    su2 = std::max(su2, max_norm(commutator<16>(g.sbar[i], g.sbar[j]) - I_unit * g.sbar[k]));
  }

  o.checks = {{"so5_closure_printed_sign", printed.max_residual, printed.tolerance, printed.passed},
              {"so5_closure_plus_i", flipped.max_residual, flipped.tolerance, flipped.passed, false},
              {"quasispin_su2", qs.max_residual, kClosureTolerance, qs.max_residual < kClosureTolerance},
              {"quasispin_beyond_spin", qs.max_spin_commutator, 0.1, qs.max_spin_commutator > 0.1},
              {"hermiticity", herm, 1e-14, herm < 1e-14},
              {"casimir", cas_res, 1e-11, cas_res < 1e-11},
              {"sbar_su2", su2, 1e-12, su2 < 1e-12}};
  o.body["closure"] = to_json(printed);
  o.body["closure_plus_i"] = to_json(flipped);
  o.body["quasispin"] = to_json(qs);
  o.body["max_residual"] = printed.max_residual;
  return o;
}

MeanFieldPoint random_point(Sampler& s) {
  const Vec3 d = s.direction();
  const double eps = s.uniform(-5.0, 5.0);
  const double mag = s.uniform(0.0, 5.0);
  const double lambda = s.uniform(0.0, 2.0 * std::numbers::pi);
  return {eps, DVector::from_polar(mag, lambda, std::acos(d[2]), std::atan2(d[1], d[0]))};
}

Outcome verify_meanfield(const RunConfig& c) {
  const GeneratorSet g = build_generators();
  Sampler s(c.seed);
  Outcome o;
  json points = json::array();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const DiagReport r = verify_diagonalization(random_point(s), g);
    worst = std::max(worst, r.residual);
    points.push_back(to_json(r));
  }
  double amp = 0.0, tdev = 0.0;
  const double pi = std::numbers::pi;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      for (int t = 0; t < 10; ++t)
        for (int p = 0; p < 10; ++p) {
          const CoherentParams cp{0.5 * pi * a / 9.0, 2.0 * pi * b / 10.0, pi * t / 9.0,
                                  2.0 * pi * p / 10.0};
          const StateVector w = coherent_state(cp, g);
          amp = std::max(amp, (w - coherent_state_closed_form(cp)).cwiseAbs().maxCoeff());
          const CVec3 et = expectation_t(w, g), ef = expected_t_formula(cp);
          for (std::size_t i = 0; i < 3; ++i) tdev = std::max(tdev, std::abs(et[i] - ef[i]));
        }
  o.checks = {{"diagonalization_100_points", worst, kDiagTolerance, worst < kDiagTolerance},
              {"coherent_closed_form_grid", amp, 1e-10, amp < 1e-10},
              {"expectation_t_formula", tdev, 1e-10, tdev < 1e-10}};
  o.body["points"] = points;
  o.body["max_residual"] = worst;
  return o;
}

Outcome solve_gap_cmd(const RunConfig& c) {
  const GapModel m = c.model();
  const GapSolution sol = solve_gap(m);
  Outcome o;
  o.checks = {{"gap_converged", sol.residual, 1e-10 * m.omega_c, sol.converged}};
  o.body["solution"] = to_json(sol, m);
  std::ostringstream os;
  write_gap_csv(os, {sol}, m);
  o.csv = os.str();
  return o;
}

Outcome sweep_temperature(const RunConfig& c) {
  const GapModel base = c.model();
  const ShellQuadrature shell0(base);
  const double tc = critical_temperature(shell0);
  std::vector<GapSolution> rows;
  bool monotone = true, converged = true;
  for (int i = 0; i < c.n; ++i) {
    GapModel m = base;
    m.temperature = c.n == 1 ? 0.0 : tc * i / (c.n - 1);
    rows.push_back(solve_gap(m));
    converged = converged && rows.back().converged;
    if (i > 0 && rows[i].delta0 > rows[i - 1].delta0) monotone = false;
  }
  Outcome o;
  o.checks = {{"sweep_converged", static_cast<double>(rows.size()), 0.0, converged},
              {"delta0_nonincreasing", tc, 0.0, monotone}};
  json js = json::array();
  for (const auto& r : rows) js.push_back(to_json(r, base));
  o.body["critical_temperature"] = tc;
  o.body["solutions"] = js;
  std::ostringstream os;
  write_gap_csv(os, rows, base);
  o.csv = os.str();
  return o;
}

Outcome field_sweep(const RunConfig& c) {
  const GeneratorSet g = build_generators();
  Sampler s(c.seed);
  Outcome o;
  json points = json::array();
  int holds = 0;
  double worst = 0.0, worst_b0 = 0.0;
  for (int i = 0; i < 20; ++i) {
    double eps = 0.0;
    while (eps == 0.0) eps = s.uniform(-5.0, 5.0);
    const Vec3 d = s.direction();
    const MeanFieldPoint p{eps, DVector::from_polar(s.uniform(0.0, 5.0), s.uniform(0.0, 2.0 * std::numbers::pi),
                                                    std::acos(d[2]), std::atan2(d[1], d[0]))};
    const double mu_b = c.muB != 0.0 ? c.muB : s.uniform(-0.5, 0.5);
    const FieldReport r = verify_field_diagonalization(p, mu_b, g);
    worst_b0 = std::max(worst_b0, verify_field_diagonalization(p, 0.0, g).residual);
    holds += r.passed ? 1 : 0;
    worst = std::max(worst, r.residual);
    points.push_back(to_json(r));
  }
  o.checks = {{"field_claim_points_holding", static_cast<double>(holds), 20.0, holds == 20, false},
              {"field_claim_max_residual", worst, kDiagTolerance, worst < kDiagTolerance, false},
              {"field_zero_limit", worst_b0, kDiagTolerance, worst_b0 < kDiagTolerance}};
  o.body["points"] = points;

  // Gap components at half the critical temperature.
  GapModel m = c.model();
  const ShellQuadrature shell0(m);
  m.temperature = 0.5 * critical_temperature(shell0);
  const ShellQuadrature shell(m);
  const double delta0 = solve_gap(shell).delta0;
  json comps = json::array();
  for (double b : {0.0, 0.01, 0.02, 0.05}) {
    const FieldGapComponents fc = field_gap_components(shell, delta0, b * m.omega_c);
    double split = 0.0;
    for (std::size_t i = 0; i < fc.up_up.size(); ++i)
      split = std::max(split, std::abs(std::abs(fc.up_up[i]) - std::abs(fc.down_down[i])));
    comps.push_back({{"muB", b * m.omega_c}, {"max_split", split}});
  }
  o.body["gap_components"] = {{"T", m.temperature}, {"delta0", delta0}, {"sweep", comps}};
  return o;
}

Outcome dipole_check(const RunConfig& c) {
  const GeneratorSet g = build_generators();
  Sampler s(c.seed);
  Outcome o;
  json reps = json::array();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int i = 0; i < 100; ++i) {
    const EquivReport r = kernel_equivalence(s.direction(), g);
    lo = std::min(lo, r.residual);
    hi = std::max(hi, r.residual);
    reps.push_back(to_json(r));
  }
  o.checks = {{"dipole_equivalence", hi, 1e-10, hi < 1e-10},
              {"dipole_residual_spread", hi - lo, 1e-10, hi - lo < 1e-10}};
  o.body["reports"] = reps;
  o.body["max_residual"] = hi;
  return o;
}

Outcome yangian_check(const RunConfig& c) {
  Sampler s(c.seed);
  std::vector<Vec3> ks;
  for (int i = 0; i < 100; ++i) ks.push_back(s.direction_off_pole());
  Outcome o;
  const YangianReport r18 = verify_eq18(c.mu1, c.mu2, c.h, ks);
  YangianOp y = build_yangian(c.mu1, c.mu2, c.h);
  o.checks.push_back({"eq18", r18.max_residual, 1e-12, r18.passed});
  o.body["eq18"] = to_json(r18);
  if (y.coefficient() == 0.0) {
    // Degenerate coupling: no translation problem; Eq. 19 LHS must vanish.
    const YangianReport r19 = verify_eq19(y, ks);
    o.checks.push_back({"eq19_degenerate", r19.max_residual, 1e-10, r19.passed});
    o.body["eq19"] = to_json(r19);
    return o;
  }
  const TranslationResult t = find_translation(y, ks);
  y.eta = t.eta;
  const YangianReport r19 = verify_eq19(y, ks);
  const double ratio = eq19_coefficient_ratio(y);
  o.checks.push_back({"eq19", r19.max_residual, 1e-10, r19.passed});
  o.checks.push_back({"eq19_coefficient_ratio", ratio, 1e-10, std::abs(ratio - 1.0) < 1e-10});
  o.body["translation"] = {{"eta", t.eta}, {"residual", t.residual}, {"degenerate", t.degenerate}};
  o.body["eq19"] = to_json(r19);
  o.body["eq19_coefficient_ratio"] = ratio;
  return o;
}

Outcome dispatch(const RunConfig& c) {
  if (c.command == "verify-algebra") return verify_algebra(c);
  if (c.command == "verify-meanfield") return verify_meanfield(c);
  if (c.command == "solve-gap") return solve_gap_cmd(c);
  if (c.command == "sweep-temperature") return sweep_temperature(c);
  if (c.command == "field-sweep") return field_sweep(c);
  if (c.command == "dipole-check") return dipole_check(c);
  return yangian_check(c);
}

json config_json(const RunConfig& c) {
  return {{"g", c.g},       {"omega_c", c.omega_c}, {"dos", c.dos},       {"T", c.T},
          {"branch", c.branch}, {"muB", c.muB},     {"mu1", c.mu1},       {"mu2", c.mu2},
          {"h", c.h},       {"n", c.n},             {"n_energy", c.n_energy},
          {"n_theta", c.n_theta}, {"n_psi", c.n_psi}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SO(5) p-wave pairing toolkit"};
  app.set_help_flag("--help", "print this help");
  RunConfig cli;
  std::string config_path, command_flag, command_pos;
  app.add_option("--config", config_path, "flat JSON config file");
  app.add_option("--command", command_flag, "command name");
  app.add_option("name", command_pos, "command name (positional)");
  auto* o_seed = app.add_option("--seed", cli.seed);
  auto* o_out = app.add_option("--output", cli.output);
  auto* o_fmt = app.add_option("--format", cli.format)->check(CLI::IsMember({"json", "csv"}));
  auto* o_g = app.add_option("--g", cli.g, "dimensionless coupling N0 V1");
  auto* o_wc = app.add_option("--omega-c", cli.omega_c);
  auto* o_dos = app.add_option("--dos", cli.dos);
  auto* o_t = app.add_option("--T", cli.T, "temperature (k_B = 1)");
  auto* o_br = app.add_option("--branch", cli.branch);
  auto* o_mub = app.add_option("--muB", cli.muB);
  auto* o_mu1 = app.add_option("--mu1", cli.mu1);
  auto* o_mu2 = app.add_option("--mu2", cli.mu2);
  auto* o_h = app.add_option("--h", cli.h);
  auto* o_n = app.add_option("--n", cli.n, "temperature points for sweep-temperature");
  auto* o_ne = app.add_option("--n-energy", cli.n_energy);
  auto* o_nt = app.add_option("--n-theta", cli.n_theta);
  auto* o_np = app.add_option("--n-psi", cli.n_psi);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunConfig c;
  try {
    if (!config_path.empty()) load_config(config_path, c);
    // Flags override file values.
    auto take = [](CLI::Option* opt, auto& dst, const auto& src) {
      if (opt->count() > 0) dst = src;
    };
    take(o_seed, c.seed, cli.seed);
    take(o_out, c.output, cli.output);
    take(o_fmt, c.format, cli.format);
    take(o_g, c.g, cli.g);
    take(o_wc, c.omega_c, cli.omega_c);
    take(o_dos, c.dos, cli.dos);
    take(o_t, c.T, cli.T);
    take(o_br, c.branch, cli.branch);
    take(o_mub, c.muB, cli.muB);
    take(o_mu1, c.mu1, cli.mu1);
    take(o_mu2, c.mu2, cli.mu2);
    take(o_h, c.h, cli.h);
    take(o_n, c.n, cli.n);
    take(o_ne, c.n_energy, cli.n_energy);
    take(o_nt, c.n_theta, cli.n_theta);
    take(o_np, c.n_psi, cli.n_psi);
    if (!command_flag.empty()) c.command = command_flag;
    if (!command_pos.empty()) c.command = command_pos;
    c.validate();
  } catch (const std::exception& e) {
    std::cerr << "so5pw: " << e.what() << '\n';
    return kExitUsage;
  }

  Outcome out;
  try {
    out = dispatch(c);
  } catch (const std::exception& e) {
    std::cerr << "so5pw: " << c.command << ": " << e.what() << '\n';
    return kExitTolerance;
  }

  std::string text;
  if (c.format == "csv") {
    text = out.csv.empty() ? checks_csv(out.checks) : out.csv;
  } else {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = c.command;
    doc["rng"] = kRngName;
    doc["seed"] = c.seed;
    doc["config"] = config_json(c);
    json checks = json::array();
    for (const auto& k : out.checks)
      checks.push_back({{"name", k.name}, {"value", k.value}, {"tolerance", k.tolerance},
                        {"passed", k.passed}, {"asserted", k.asserted}});
    doc["checks"] = checks;
    for (auto& [key, v] : out.body.items()) doc[key] = v;
    text = doc.dump(2) + "\n";
  }

  summarize(out.checks);
  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) {
      std::cerr << "so5pw: cannot write '" << c.output << "'\n";
      return kExitUsage;
    }
  }

  for (const auto& k : out.checks)
    if (k.asserted && !k.passed) return kExitTolerance;
  return kExitOk;
}
