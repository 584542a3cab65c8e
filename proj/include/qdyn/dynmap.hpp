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

// Dynamical A-maps acting on flattened density matrices, their realigned B
// (Choi) form and the canonical spectral decomposition
//
//   A = sum_mu lambda_mu C_mu (x) C_mu^*,   rho -> sum_mu lambda_mu C_mu rho C_mu^dagger.
//
// Flattening convention: element (r, s) of an n x n matrix sits at n*r + s,
// so A is indexed A[(r', s'), (r, s)] and rho'(r', s') = sum A[(r', s'), (r, s)] rho(r, s).

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "qdyn/linalg.hpp"

namespace qdyn {

/// Hermitian, unit-trace, positive semidefinite n x n matrix.
class DensityMatrix {
 public:
  /// Validates to 1e-10 (hermiticity, trace, min eigenvalue) and stores the
  /// hermitian part. Throws NotAState.
  explicit DensityMatrix(const ComplexMatrix& m);

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  static DensityMatrix maximally_mixed(std::size_t n);

 private:
  ComplexMatrix matrix_;
};

/// Linear map on n x n matrices in the flattened representation.
class AMap {
 public:
  /// Checks the hermiticity- and trace-preservation constraints to 1e-10.
  /// Throws InvalidMap or DimensionMismatch.
  AMap(std::size_t dim, ComplexMatrix matrix);

  /// Skips the constraint checks (arbitrary linear maps).
  static AMap unchecked(std::size_t dim, ComplexMatrix matrix);
  static AMap identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  /// max |A[(s',r'),(s,r)] - conj(A[(r',s'),(r,s)])|.
  double hermiticity_preservation_defect() const;
  /// max |sum_r' A[(r',r'),(r,s)] - delta_rs|.
  double trace_preservation_defect() const;

 private:
  AMap() = default;
  std::size_t dim_ = 0;
  ComplexMatrix matrix_;
};

/// Realigned map B[(r', r), (s', s)] = A[(r', s'), (r, s)]; hermitian.
struct BMatrix {
  std::size_t dim = 0;
  ComplexMatrix matrix;
};

enum class Classification { CP, NCP };

std::string_view to_string(Classification c);

struct CanonicalDecomposition {
  std::size_t dim = 0;
  /// Descending; zero eigenvalues are retained so there are always n^2 terms.
  std::vector<double> eigenvalues;
  /// operators[mu] pairs with eigenvalues[mu]; Hilbert-Schmidt orthonormal.
  std::vector<ComplexMatrix> operators;
  Classification classification = Classification::CP;
  /// -sum of the negative eigenvalues (0 for CP maps up to tolerance).
  double negativity = 0.0;
};

/// Result of applying a map to a state. The output of an NCP map need not be
/// positive, so positivity is reported rather than enforced.
struct MappedState {
  ComplexMatrix matrix;
  double min_eigenvalue = 0.0;
  bool positivity_violation = false;

  /// Throws NotAState when positivity_violation is set.
  DensityMatrix state() const;
};

/// Eigenvalues below this are taken as genuinely negative.
inline constexpr double kCpThreshold = 1e-10;

/// {I, sx, sy, sz} / sqrt(2).
std::vector<ComplexMatrix> pauli_basis();
/// {|r><s|} ordered by n*r + s.
std::vector<ComplexMatrix> matrix_unit_basis(std::size_t n);
/// Pauli basis for n = 2, matrix units otherwise.
std::vector<ComplexMatrix> default_basis(std::size_t n);

/// Throws BasisNotOrthonormal or DimensionMismatch.
void require_orthonormal_basis(std::span<const ComplexMatrix> basis, std::size_t n);

std::vector<Complex> flatten(const ComplexMatrix& m);
ComplexMatrix unflatten(std::span<const Complex> v, std::size_t n);

/// Coefficients A_ab = Tr[A (T_a^dagger (x) T_b^T)] in the given basis.
ComplexMatrix coefficient_matrix(const AMap& a, std::span<const ComplexMatrix> basis);

CanonicalDecomposition canonical_decompose(const AMap& a, std::span<const ComplexMatrix> basis);
CanonicalDecomposition canonical_decompose(const AMap& a);

/// sum_mu lambda_mu C_mu (x) C_mu^*.
ComplexMatrix reconstruct_amap(const CanonicalDecomposition& d);
/// sum_mu lambda_mu C_mu^dagger C_mu; the identity for trace-preserving maps.
ComplexMatrix trace_identity(const CanonicalDecomposition& d);

Classification classify(std::span<const double> eigenvalues);

/// The index permutation M[(i,j),(k,l)] -> M[(i,k),(j,l)]; an involution.
ComplexMatrix realign(const ComplexMatrix& m, std::size_t n);
BMatrix realign_to_b(const AMap& a);

/// Raw linear action on any n x n matrix.
ComplexMatrix apply_linear(const AMap& a, const ComplexMatrix& q);
MappedState apply_map(const AMap& a, const DensityMatrix& rho);
MappedState apply_canonical(const CanonicalDecomposition& d, const DensityMatrix& rho);

using MapFamily = std::function<AMap(double)>;

/// ||A(t + tau) - A(t) A(tau)||_F at one sample point.
double check_semigroup(const MapFamily& family, double t, double tau);

}  // namespace qdyn
