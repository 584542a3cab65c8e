// Copyright 2026 The qdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small dense complex linear algebra: the matrix type, hermitian
// eigendecomposition (cyclic Jacobi) and spectral matrix functions.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace qdyn {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPsd = 1e-10;
inline constexpr double kReconstruction = 1e-12;
inline constexpr double kPhase = 1e-12;
inline constexpr double kSupport = 1e-12;
}  // namespace tol

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major initializer, e.g. {{1, 0}, {0, 1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix from_row_major(std::size_t rows, std::size_t cols,
                                      std::vector<Complex> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);

/// Matrix-vector product.
std::vector<Complex> apply(const ComplexMatrix& m, std::span<const Complex> v);

/// ||a - b||_F. Throws DimensionMismatch on shape mismatch.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||m - m^dagger||_F / ||m||_F (0 for the zero matrix).
double hermiticity_defect(const ComplexMatrix& m);

/// (m + m^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Tr[a^dagger b].
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// (a (x) b)_{(i,k),(j,l)} = a_ij b_kl.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out the second factor of a (d1*d2)-dimensional operator with
/// basis ordering |r s> -> d2*r + s.
ComplexMatrix partial_trace_second(const ComplexMatrix& m, std::size_t d1, std::size_t d2);

/// Traces out the first factor.
ComplexMatrix partial_trace_first(const ComplexMatrix& m, std::size_t d1, std::size_t d2);

struct HermitianEig {
  /// Sorted descending.
  std::vector<double> eigenvalues;
  /// Column k is the unit eigenvector for eigenvalues[k].
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

/// Eigendecomposition of a hermitian matrix.
///
/// The input is symmetrized before decomposition. Eigenvalues come out in
/// descending order; eigenvalues closer than a few ulps of the spectral
/// radius are ordered lexicographically by their (phase-fixed) eigenvector
/// entries. Each eigenvector's first entry with magnitude above 1e-12 is
/// real and positive.
///
/// Throws DimensionMismatch for non-square input and NotHermitian when the
/// relative hermiticity defect exceeds 1e-10.
HermitianEig eig_hermitian(const ComplexMatrix& m);

/// Eigenvalues only, descending.
std::vector<double> eigvals_hermitian(const ComplexMatrix& m);

/// V f(diag) V^dagger for a hermitian matrix.
ComplexMatrix apply_spectral(const HermitianEig& eig, const std::function<double(double)>& f);

/// Principal square root of a PSD matrix. Eigenvalues in [-1e-10, 0) are
/// clamped to zero, as are positive ones below the roundoff floor of the
/// spectrum. Throws NotPsd below -1e-10.
ComplexMatrix mat_sqrt_psd(const ComplexMatrix& m);

struct SpectralLog {
  /// ln m restricted to the support; zero on the kernel.
  ComplexMatrix log;
  /// Orthogonal projector onto the support (eigenvalues > 1e-12).
  ComplexMatrix support;
  /// Number of eigenvalues in the support.
  std::size_t rank = 0;
};

/// Natural logarithm of a PSD matrix on its support. Throws NotPsd.
SpectralLog mat_log_spectral(const ComplexMatrix& m);

/// Smallest eigenvalue of a hermitian matrix.
double min_eigenvalue(const ComplexMatrix& m);

}  // namespace qdyn
