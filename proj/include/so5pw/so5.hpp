#pragma once

// SO(5) generator set of a (k, -k) fermion quadruple: spin, pair and charge
// operators, their 5x5 antisymmetric arrangement, and closure checks.

#include "so5pw/fock.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace so5pw {

using Pauli = SquareMatrix<2>;

/// sigma_0 = 1 and the standard Pauli matrices (sigma_3 diagonal).
[[nodiscard]] inline std::array<Pauli, 4> pauli_matrices() {
  Pauli s0, s1, s2, s3;
  s0 << 1.0, 0.0, 0.0, 1.0;
  s1 << 0.0, 1.0, 1.0, 0.0;
  s2 << 0.0, -I_unit, I_unit, 0.0;
  s3 << 1.0, 0.0, 0.0, -1.0;
  return {s0, s1, s2, s3};
}

struct GeneratorSet {
  std::array<DenseComplexMatrix, 4> spin_k;   // S_i(k) = a+_{k a} (sigma_i)_{ab} a_{k b}, i = 0..3
  std::array<DenseComplexMatrix, 4> spin_mk;  // S_i(-k)
  std::array<DenseComplexMatrix, 3> sbar;     // (S_i(k) + S_i(-k)) / 2, i = x, y, z
  std::array<DenseComplexMatrix, 4> t;        // T_i = a_{-k a} (sigma_2 sigma_i)_{ab} a_{k b}
  std::array<DenseComplexMatrix, 4> tdag;
  DenseComplexMatrix q;                       // (S_0(k) + S_0(-k) - 2) / 2

  // Cartesian triplet components (x, y, z) of T and T+.
  [[nodiscard]] const DenseComplexMatrix& T(int i) const { return t[static_cast<std::size_t>(i + 1)]; }
  [[nodiscard]] const DenseComplexMatrix& Tdag(int i) const {
    return tdag[static_cast<std::size_t>(i + 1)];
  }
};

[[nodiscard]] inline GeneratorSet build_generators() {
  const auto sigma = pauli_matrices();
  std::array<DenseComplexMatrix, kModes> cre, ann;
  for (std::size_t m = 0; m < kModes; ++m) {
    cre[m] = creation_op(ModeIndex::from_index(m));
    ann[m] = cre[m].adjoint();
  }
  constexpr std::size_t plus = 0, minus = 2;

  GeneratorSet g;
  for (std::size_t i = 0; i < 4; ++i) {
    g.spin_k[i].setZero();
    g.spin_mk[i].setZero();
    g.t[i].setZero();
    const Pauli pair = sigma[2] * sigma[i];
    for (std::size_t al = 0; al < 2; ++al) {
      for (std::size_t be = 0; be < 2; ++be) {
        const auto ia = static_cast<Eigen::Index>(al), ib = static_cast<Eigen::Index>(be);
        g.spin_k[i] += sigma[i](ia, ib) * cre[plus + al] * ann[plus + be];
        g.spin_mk[i] += sigma[i](ia, ib) * cre[minus + al] * ann[minus + be];
        g.t[i] += pair(ia, ib) * ann[minus + al] * ann[plus + be];
      }
    }
    g.tdag[i] = g.t[i].adjoint();
  }
  for (std::size_t i = 0; i < 3; ++i) g.sbar[i] = 0.5 * (g.spin_k[i + 1] + g.spin_mk[i + 1]);
  g.q = 0.5 * (g.spin_k[0] + g.spin_mk[0]) - identity();
  return g;
}

/// Antisymmetric 5x5 array of operators, indexed 1..5 in the accessors.
/// Lower-triangle entries follow the printed generator layout with row a and
/// column b, e.g. I_51 = Q and I_32 = -Sbar_z.
class SO5Matrix {
 public:
  [[nodiscard]] const DenseComplexMatrix& operator()(int a, int b) const {
    return entries_[slot(a)][slot(b)];
  }
  DenseComplexMatrix& operator()(int a, int b) { return entries_[slot(a)][slot(b)]; }

 private:
  static std::size_t slot(int a) {
    if (a < 1 || a > 5) throw std::out_of_range("SO5Matrix index " + std::to_string(a));
    return static_cast<std::size_t>(a - 1);
  }
  std::array<std::array<DenseComplexMatrix, 5>, 5> entries_;
};

[[nodiscard]] inline SO5Matrix assemble_so5(const GeneratorSet& g) {
  SO5Matrix m;
  for (int a = 1; a <= 5; ++a) m(a, a).setZero();
  const complex inv2i = 1.0 / (2.0 * I_unit);
  for (int i = 0; i < 3; ++i) {
    m(i + 2, 1) = -0.5 * (g.Tdag(i) + g.T(i));
    m(5, i + 2) = inv2i * (g.T(i) - g.Tdag(i));
  }
  m(3, 2) = -g.sbar[2];
  m(4, 2) = g.sbar[1];
  m(4, 3) = -g.sbar[0];
  m(5, 1) = g.q;
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b < a; ++b) m(b, a) = -m(a, b);
  return m;
}

/// Overall sign of the structure constants in
///   [I_ab, I_cd] = s * i (d_ac I_bd + d_bd I_ac - d_ad I_bc - d_bc I_ad).
/// MinusI is the conventional form for L_ab = -i(x_a d_b - x_b d_a).
enum class StructureSign { MinusI, PlusI };

[[nodiscard]] inline const char* to_string(StructureSign s) {
  return s == StructureSign::MinusI ? "-i" : "+i";
}

struct ClosureEntry {
  std::array<int, 4> pair{};  // (a, b, c, d), 1-based
  double residual = 0.0;
};

struct ClosureReport {
  std::string relation;
  std::vector<ClosureEntry> entries;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

inline constexpr double kClosureTolerance = 1e-12;

[[nodiscard]] inline ClosureReport verify_so5_closure(const SO5Matrix& gen,
                                                      StructureSign sign = StructureSign::MinusI,
                                                      double tolerance = kClosureTolerance) {
  const complex s = (sign == StructureSign::MinusI ? -1.0 : 1.0) * I_unit;
  auto delta = [](int x, int y) { return x == y ? 1.0 : 0.0; };
  ClosureReport rep;
  rep.relation = std::string("[I_ab, I_cd] = ") + to_string(sign) +
                 " (d_ac I_bd + d_bd I_ac - d_ad I_bc - d_bc I_ad)";
  rep.tolerance = tolerance;
  for (int a = 1; a <= 5; ++a)
    for (int b = a + 1; b <= 5; ++b)
      for (int c = 1; c <= 5; ++c)
        for (int d = c + 1; d <= 5; ++d) {
          const DenseComplexMatrix rhs =
              s * (delta(a, c) * gen(b, d) + delta(b, d) * gen(a, c) - delta(a, d) * gen(b, c) -
                   delta(b, c) * gen(a, d));
          const double r = max_norm(commutator(gen(a, b), gen(c, d)) - rhs);
          rep.entries.push_back({{a, b, c, d}, r});
          rep.max_residual = std::max(rep.max_residual, r);
        }
  rep.passed = rep.max_residual < tolerance;
  return rep;
}

/// Sum over a < b of I_ab^2.
[[nodiscard]] inline DenseComplexMatrix so5_casimir(const SO5Matrix& gen) {
  DenseComplexMatrix c = DenseComplexMatrix::Zero();
  for (int a = 1; a <= 5; ++a)
    for (int b = a + 1; b <= 5; ++b) c += gen(a, b) * gen(a, b);
  return c;
}

struct NamedResidual {
  std::string name;
  double residual = 0.0;
};

struct QuasispinReport {
  std::vector<NamedResidual> closure;         // SU(2) relations of the pair quasi-spin
  double max_residual = 0.0;
  std::vector<NamedResidual> spin_commutators;  // ||[Lambda, S_i(k)]||, expected nonzero
  double max_spin_commutator = 0.0;
  bool passed = false;
};

struct Quasispin {
  DenseComplexMatrix raise;  // (i/sqrt2) T_3
  DenseComplexMatrix lower;  // (-i/sqrt2) T_3^+
  DenseComplexMatrix z;      // -Q
};

[[nodiscard]] inline Quasispin quasispin(const GeneratorSet& g) {
  const double r2 = std::sqrt(2.0);
  return {(I_unit / r2) * g.T(2), (-I_unit / r2) * g.Tdag(2), -g.q};
}

/// Checks [L_z, L_+] = L_+, [L_z, L_-] = -L_-, [L_+, L_-] = L_z and measures
/// how far the set is from commuting with the single-momentum spin S(k).
[[nodiscard]] inline QuasispinReport verify_quasispin(const GeneratorSet& g,
                                                      double tolerance = kClosureTolerance) {
  const Quasispin l = quasispin(g);
  QuasispinReport rep;
  rep.closure = {
      {"[Lz,L+]-L+", max_norm(commutator(l.z, l.raise) - l.raise)},
      {"[Lz,L-]+L-", max_norm(commutator(l.z, l.lower) + l.lower)},
      {"[L+,L-]-Lz", max_norm(commutator(l.raise, l.lower) - l.z)},
  };
  for (const auto& e : rep.closure) rep.max_residual = std::max(rep.max_residual, e.residual);

  const std::array<std::pair<const char*, const DenseComplexMatrix*>, 3> members{
      {{"L+", &l.raise}, {"L-", &l.lower}, {"Lz", &l.z}}};
  const std::array<const char*, 3> axes{"x", "y", "z"};
  for (const auto& [name, op] : members)
    for (std::size_t i = 0; i < 3; ++i) {
      const double n = max_norm(commutator(*op, g.spin_k[i + 1]));
      rep.spin_commutators.push_back({std::string("[") + name + ",S" + axes[i] + "(k)]", n});
      rep.max_spin_commutator = std::max(rep.max_spin_commutator, n);
    }
  rep.passed = rep.max_residual < tolerance;
  return rep;
}

}  // namespace so5pw
