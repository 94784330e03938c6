#pragma once

// Fermionic Fock space of one momentum pair (k, -k) and the dense-matrix
// toolkit shared by the rest of the library.
//
// Modes are ordered (k up, k down, -k up, -k down) = (0, 1, 2, 3). A basis
// state is an occupation bitmask, bit b set when mode b is occupied, so the
// vacuum is index 0. The basis vector for mask s is
//   (a+_0)^{n_0} (a+_1)^{n_1} (a+_2)^{n_2} (a+_3)^{n_3} |vac>
// which fixes the Jordan-Wigner string of a+_m to run over modes below m.

#include <Eigen/Dense>

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace so5pw {

using complex = std::complex<double>;
inline constexpr complex I_unit{0.0, 1.0};

inline constexpr std::size_t kModes = 4;
inline constexpr std::size_t kFockDim = std::size_t{1} << kModes;

template <int N>
using SquareMatrix = Eigen::Matrix<complex, N, N>;
template <int N>
using Vector = Eigen::Matrix<complex, N, 1>;

using DenseComplexMatrix = SquareMatrix<static_cast<int>(kFockDim)>;
using StateVector = Vector<static_cast<int>(kFockDim)>;

enum class Momentum { Plus, Minus };
enum class Spin { Up, Down };

struct ModeIndex {
  Momentum momentum = Momentum::Plus;
  Spin spin = Spin::Up;

  [[nodiscard]] constexpr std::size_t index() const noexcept {
    return (momentum == Momentum::Minus ? 2u : 0u) + (spin == Spin::Down ? 1u : 0u);
  }
  [[nodiscard]] static constexpr ModeIndex from_index(std::size_t i) {
    return {i >= 2 ? Momentum::Minus : Momentum::Plus, (i % 2) ? Spin::Down : Spin::Up};
  }
  constexpr bool operator==(const ModeIndex&) const = default;
};

inline constexpr std::array<ModeIndex, kModes> kAllModes{
    ModeIndex{Momentum::Plus, Spin::Up}, ModeIndex{Momentum::Plus, Spin::Down},
    ModeIndex{Momentum::Minus, Spin::Up}, ModeIndex{Momentum::Minus, Spin::Down}};

/// Bitmask of a basis state from explicit occupations of (k up, k dn, -k up, -k dn).
[[nodiscard]] constexpr std::size_t basis_index(bool k_up, bool k_dn, bool mk_up, bool mk_dn) noexcept {
  return (k_up ? 1u : 0u) | (k_dn ? 2u : 0u) | (mk_up ? 4u : 0u) | (mk_dn ? 8u : 0u);
}

[[nodiscard]] inline StateVector basis_state(std::size_t mask) {
  if (mask >= kFockDim) throw std::out_of_range("basis_state: mask " + std::to_string(mask));
  StateVector v = StateVector::Zero();
  v(static_cast<Eigen::Index>(mask)) = 1.0;
  return v;
}

[[nodiscard]] inline StateVector vacuum() { return basis_state(0); }

[[nodiscard]] inline DenseComplexMatrix identity() { return DenseComplexMatrix::Identity(); }

[[nodiscard]] inline DenseComplexMatrix creation_op(ModeIndex mode) {
  const std::size_t m = mode.index();
  DenseComplexMatrix op = DenseComplexMatrix::Zero();
  for (std::size_t s = 0; s < kFockDim; ++s) {
    if ((s >> m) & 1u) continue;
    const std::size_t below = s & ((std::size_t{1} << m) - 1u);
    const double sign = (std::popcount(below) % 2) ? -1.0 : 1.0;
    op(static_cast<Eigen::Index>(s | (std::size_t{1} << m)), static_cast<Eigen::Index>(s)) = sign;
  }
  return op;
}

[[nodiscard]] inline DenseComplexMatrix annihilation_op(ModeIndex mode) {
  return creation_op(mode).adjoint();
}

[[nodiscard]] inline DenseComplexMatrix number_op(ModeIndex mode) {
  return creation_op(mode) * annihilation_op(mode);
}

template <typename Derived>
[[nodiscard]] double max_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <int N>
[[nodiscard]] SquareMatrix<N> commutator(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  return a * b - b * a;
}

template <int N>
[[nodiscard]] SquareMatrix<N> anticommutator(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  return a * b + b * a;
}

/// Thrown when an input to matrix_exponential is outside its supported range.
class ExponentialOverflow : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kExpEntryLimit = 1e8;

/// exp(M) by scaling and squaring with the degree-13 Pade approximant
/// (Higham 2005). Inputs with any entry above 1e8 in magnitude are rejected.
template <int N>
[[nodiscard]] SquareMatrix<N> matrix_exponential(const SquareMatrix<N>& m) {
  if (!m.allFinite() || max_norm(m) > kExpEntryLimit)
    throw ExponentialOverflow("matrix_exponential: entry magnitude exceeds 1e8");
  if (m.isZero(0.0)) return SquareMatrix<N>::Identity(m.rows(), m.cols());

  static constexpr std::array<double, 14> b{64764752532480000.0, 32382376266240000.0,
                                            7771770303897600.0,  1187353796428800.0,
                                            129060195264000.0,   10559470521600.0,
                                            670442572800.0,      33522128640.0,
                                            1323241920.0,        40840800.0,
                                            960960.0,            16380.0,
                                            182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const SquareMatrix<N> a = m / std::ldexp(1.0, squarings);

  const SquareMatrix<N> id = SquareMatrix<N>::Identity(a.rows(), a.cols());
  const SquareMatrix<N> a2 = a * a;
  const SquareMatrix<N> a4 = a2 * a2;
  const SquareMatrix<N> a6 = a4 * a2;
  const SquareMatrix<N> u_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const SquareMatrix<N> u =
      a * (a6 * u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const SquareMatrix<N> v_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const SquareMatrix<N> v = a6 * v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  SquareMatrix<N> result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace so5pw
