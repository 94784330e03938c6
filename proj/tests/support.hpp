#pragma once

#include "so5pw/meanfield.hpp"
#include "so5pw/random.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

namespace testing_support {

using namespace so5pw;

inline MeanFieldPoint random_point(Sampler& s, double eps_max = 5.0, double gap_max = 5.0) {
  const Vec3 d = s.direction();
  return {s.uniform(-eps_max, eps_max),
          DVector::from_polar(s.uniform(0.0, gap_max), s.uniform(0.0, 2.0 * std::numbers::pi),
                              std::acos(d[2]), std::atan2(d[1], d[0]))};
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Runs the CLI with stdout discarded; returns its exit status.
inline int run_cli(const std::string& args) {
  const std::string cmd = std::string(SO5PW_CLI) + " " + args + " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

inline std::string temp_path(const std::string& name) {
  const char* dir = std::getenv("TMPDIR");
  return std::string(dir ? dir : "/tmp") + "/so5pw_" + name;
}

}  // namespace testing_support
