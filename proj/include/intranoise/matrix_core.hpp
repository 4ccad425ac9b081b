#pragma once

// Fixed-size dense complex matrices for two-qubit (4x4) and single-qubit
// (2x2) work, plus the small Hermitian eigen machinery the rest of the
// library builds on.
//
// Basis order for 4x4 operators is fixed:
//   0 <-> |a1 b1>,  1 <-> |a1 b2>,  2 <-> |a2 b1>,  3 <-> |a2 b2>
// which is the Kronecker order of (first factor) x (second factor).

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <stdexcept>

namespace intranoise {

using Complex = std::complex<double>;

namespace tolerance {
// Max |h - h^dagger| accepted as Hermitian.
inline constexpr double kHermitian = 1e-10;
// Eigenvalues in [-kPsdClamp, 0) are rounding and get clamped to 0.
inline constexpr double kPsdClamp = 1e-9;
// Cyclic Jacobi stops when off-diagonal Frobenius < kJacobiRelative * ||H||_F.
inline constexpr double kJacobiRelative = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
// Eigenvalues of a density matrix at or below this magnitude are treated as
// exact zeros when factorizing it (rounding floor of the 4x4 Jacobi solver).
inline constexpr double kRankFloor = 64 * std::numeric_limits<double>::epsilon();
}  // namespace tolerance

template <std::size_t N>
class SquareMatrix {
 public:
  static constexpr std::size_t kDim = N;

  constexpr SquareMatrix() = default;

  /// Row-major initializer; must contain exactly N*N entries.
  SquareMatrix(std::initializer_list<Complex> row_major) {
    if (row_major.size() != N * N)
      throw std::invalid_argument("SquareMatrix: wrong initializer size");
    std::size_t i = 0;
    for (const auto& z : row_major) data_[i++] = z;
  }

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static SquareMatrix diagonal(const std::array<Complex, N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * N + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * N + col];
  }

  SquareMatrix& operator+=(const SquareMatrix& rhs) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] += rhs.data_[i];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& rhs) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] -= rhs.data_[i];
    return *this;
  }
  SquareMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix lhs, const SquareMatrix& rhs) { return lhs += rhs; }
  friend SquareMatrix operator-(SquareMatrix lhs, const SquareMatrix& rhs) { return lhs -= rhs; }
  friend SquareMatrix operator*(SquareMatrix m, Complex s) { return m *= s; }
  friend SquareMatrix operator*(Complex s, SquareMatrix m) { return m *= s; }

  friend SquareMatrix operator*(const SquareMatrix& lhs, const SquareMatrix& rhs) {
    SquareMatrix out;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex l = lhs(i, k);
        if (l == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) out(i, j) += l * rhs(k, j);
      }
    return out;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::array<Complex, N * N> data_{};
};

using CMat2 = SquareMatrix<2>;
using CMat4 = SquareMatrix<4>;
using CVec4 = std::array<Complex, 4>;
using RealArray4 = std::array<double, 4>;

template <std::size_t N>
SquareMatrix<N> adjoint(const SquareMatrix<N>& m) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(m(j, i));
  return out;
}

template <std::size_t N>
SquareMatrix<N> conjugate(const SquareMatrix<N>& m) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(m(i, j));
  return out;
}

template <std::size_t N>
SquareMatrix<N> transpose(const SquareMatrix<N>& m) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = m(j, i);
  return out;
}

template <std::size_t N>
Complex trace(const SquareMatrix<N>& m) {
  Complex t{};
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

template <std::size_t N>
double frobenius_norm(const SquareMatrix<N>& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

/// Largest entry modulus of lhs - rhs.
template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& lhs, const SquareMatrix<N>& rhs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      worst = std::max(worst, std::abs(lhs(i, j) - rhs(i, j)));
  return worst;
}

/// max |h - h^dagger| over entries.
template <std::size_t N>
double hermiticity_error(const SquareMatrix<N>& h) {
  return max_abs_diff(h, adjoint(h));
}

inline CMat4 mat_mul(const CMat4& lhs, const CMat4& rhs) { return lhs * rhs; }

/// Kronecker product a (x) b in the fixed basis order.
CMat4 tensor2x2(const CMat2& a, const CMat2& b);

/// |u><v|
CMat4 outer(const CVec4& u, const CVec4& v);

CMat2 pauli_x();
CMat2 pauli_y();
CMat2 pauli_z();

/// U = sigma_y (x) sigma_y, the spin-flip operator.
const CMat4& spin_flip();

struct HermitianEigensystem {
  RealArray4 values;  // descending
  CMat4 vectors;      // column k is the eigenvector of values[k]
};

/// Eigen-decomposition of a 4x4 Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws Error(NotHermitian) when max|h - h^dagger| > 1e-10.
HermitianEigensystem eigh4(const CMat4& h);

/// Eigenvalues only, descending; sum equals trace(h) to rounding.
RealArray4 eig_hermitian4(const CMat4& h);

/// Hermitian PSD square root. Eigenvalues in [-1e-9, 0) are clamped to 0;
/// anything more negative throws Error(NotPSD).
CMat4 psd_sqrt(const CMat4& h);

/// Singular values of a 4x4 complex matrix, descending, by one-sided
/// (Hestenes) Jacobi. Absolute accuracy is of order eps * ||m||, including
/// for singular values near zero.
RealArray4 singular_values4(const CMat4& m);

}  // namespace intranoise
