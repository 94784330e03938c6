#pragma once

// JSON and CSV emitters for the verification reports.

#include "so5pw/dipole.hpp"
#include "so5pw/gap.hpp"
#include "so5pw/meanfield.hpp"
#include "so5pw/so5.hpp"
#include "so5pw/yangian.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace so5pw {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

[[nodiscard]] inline json to_json(const ClosureReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"pair", {e.pair[0], e.pair[1], e.pair[2], e.pair[3]}}, {"residual", e.residual}});
  return {{"relation", r.relation},
          {"max_residual", r.max_residual},
          {"tolerance", r.tolerance},
          {"passed", r.passed},
          {"entries", entries}};
}

[[nodiscard]] inline json to_json(const std::vector<NamedResidual>& v) {
  json out = json::array();
  for (const auto& n : v) out.push_back({{"name", n.name}, {"residual", n.residual}});
  return out;
}

[[nodiscard]] inline json to_json(const QuasispinReport& r) {
  return {{"max_residual", r.max_residual},
          {"closure", to_json(r.closure)},
          {"max_spin_commutator", r.max_spin_commutator},
          {"spin_commutators", to_json(r.spin_commutators)},
          {"passed", r.passed}};
}

[[nodiscard]] inline json to_json(const DiagReport& r) {
  return {{"epsilon", r.epsilon},
          {"delta_magnitude", r.delta_magnitude},
          {"angles", r.angles},
          {"r", r.r},
          {"energy", r.energy},
          {"residual", r.residual},
          {"ground_branch_residual", r.ground_branch_residual},
          {"passed", r.passed}};
}

[[nodiscard]] inline json to_json(const FieldReport& r) {
  return {{"epsilon", r.epsilon},
          {"delta_magnitude", r.delta_magnitude},
          {"mu_b", r.mu_b},
          {"angles", r.angles},
          {"residual", r.residual},
          {"off_diagonal", r.off_diagonal},
          {"singular", r.singular},
          {"passed", r.passed}};
}

[[nodiscard]] inline json to_json(const GapSolution& s, const GapModel& m) {
  return {{"branch", to_string(s.branch)},
          {"g", m.g()},
          {"omega_c", m.omega_c},
          {"T", s.temperature},
          {"delta0", s.delta0},
          {"residual", s.residual},
          {"iterations", s.iterations},
          {"converged", s.converged},
          {"gap_function", s.gap_function}};
}

[[nodiscard]] inline json to_json(const EquivReport& r) {
  return {{"q", r.q},
          {"residual", r.residual},
          {"euler", {r.euler.alpha, r.euler.beta, r.euler.gamma}},
          {"passed", r.passed}};
}

[[nodiscard]] inline json to_json(const YangianReport& r) {
  json ids = json::array();
  for (const auto& i : r.identities)
    ids.push_back({{"identity", i.identity},
                   {"max_residual", i.max_residual},
                   {"fitted_ratio", i.fitted_ratio},
                   {"n_samples", r.n_samples},
                   {"params", {{"mu1", r.mu1}, {"mu2", r.mu2}, {"h", r.h}, {"eta", r.eta}}}});
  return {{"identities", ids}, {"max_residual", r.max_residual}, {"passed", r.passed}};
}

/// %.17g; non-finite values print as nan / inf.
[[nodiscard]] inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline const char* const kGapCsvHeader = "T,delta0,residual,iterations,branch,g,omega_c";

inline void write_gap_csv(std::ostream& os, const std::vector<GapSolution>& rows, const GapModel& m) {
  os << kGapCsvHeader << '\n';
  for (const auto& s : rows)
    os << format_double(s.temperature) << ',' << format_double(s.delta0) << ','
       << format_double(s.residual) << ',' << s.iterations << ',' << to_string(s.branch) << ','
       << format_double(m.g()) << ',' << format_double(m.omega_c) << '\n';
}

}  // namespace so5pw
