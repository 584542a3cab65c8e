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

#include "qdyn/dynmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

void require_map_shape(std::size_t dim, const ComplexMatrix& m) {
  if (dim == 0 || m.rows() != dim * dim || m.cols() != dim * dim) {
    throw DimensionMismatch("AMap: matrix must be n^2 x n^2 for n = " + std::to_string(dim));
  }
}

MappedState finish(ComplexMatrix out) {
  MappedState result;
  result.matrix = std::move(out);
  result.min_eigenvalue = min_eigenvalue(hermitian_part(result.matrix));
  result.positivity_violation = result.min_eigenvalue < -tol::kPsd;
  return result;
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  if (!m.is_square() || m.empty()) throw NotAState("DensityMatrix: matrix must be square");
  if (frobenius_distance(m, m.adjoint()) > tol::kHermitian) {
    throw NotAState("DensityMatrix: matrix is not hermitian");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > tol::kHermitian) {
    throw NotAState("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  matrix_ = hermitian_part(m);
  const double lmin = min_eigenvalue(matrix_);
  if (lmin < -tol::kPsd) {
    throw NotAState("DensityMatrix: negative eigenvalue " + std::to_string(lmin));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
  return DensityMatrix(ComplexMatrix::identity(n) * Complex(1.0 / static_cast<double>(n)));
}

AMap::AMap(std::size_t dim, ComplexMatrix matrix) : dim_(dim), matrix_(std::move(matrix)) {
  require_map_shape(dim_, matrix_);
  if (hermiticity_preservation_defect() > tol::kHermitian) {
    throw InvalidMap("AMap: map does not preserve hermiticity");
  }
  if (trace_preservation_defect() > tol::kHermitian) {
    throw InvalidMap("AMap: map does not preserve the trace");
  }
}

AMap AMap::unchecked(std::size_t dim, ComplexMatrix matrix) {
  require_map_shape(dim, matrix);
  AMap a;
  a.dim_ = dim;
  a.matrix_ = std::move(matrix);
  return a;
}

AMap AMap::identity(std::size_t dim) { return AMap(dim, ComplexMatrix::identity(dim * dim)); }

double AMap::hermiticity_preservation_defect() const {
  const std::size_t n = dim_;
  double worst = 0.0;
  for (std::size_t rp = 0; rp < n; ++rp)
    for (std::size_t sp = 0; sp < n; ++sp)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          const Complex lhs = matrix_(n * sp + rp, n * s + r);
          const Complex rhs = std::conj(matrix_(n * rp + sp, n * r + s));
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

double AMap::trace_preservation_defect() const {
  const std::size_t n = dim_;
  double worst = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      Complex sum = 0.0;
      for (std::size_t rp = 0; rp < n; ++rp) sum += matrix_(n * rp + rp, n * r + s);
      worst = std::max(worst, std::abs(sum - (r == s ? 1.0 : 0.0)));
    }
  return worst;
}

std::string_view to_string(Classification c) { return c == Classification::CP ? "CP" : "NCP"; }

DensityMatrix MappedState::state() const {
  if (positivity_violation) {
    throw NotAState("mapped matrix has eigenvalue " + std::to_string(min_eigenvalue));
  }
  return DensityMatrix(matrix);
}

std::vector<ComplexMatrix> pauli_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  return {
      ComplexMatrix{{h, 0.0}, {0.0, h}},
      ComplexMatrix{{0.0, h}, {h, 0.0}},
      ComplexMatrix{{0.0, -h * kI}, {h * kI, 0.0}},
      ComplexMatrix{{h, 0.0}, {0.0, -h}},
  };
}

std::vector<ComplexMatrix> matrix_unit_basis(std::size_t n) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      ComplexMatrix e(n, n);
      e(r, s) = 1.0;
      basis.push_back(std::move(e));
    }
  return basis;
}

std::vector<ComplexMatrix> default_basis(std::size_t n) {
  return n == 2 ? pauli_basis() : matrix_unit_basis(n);
}

void require_orthonormal_basis(std::span<const ComplexMatrix> basis, std::size_t n) {
  if (basis.size() != n * n) {
    throw DimensionMismatch("basis must contain n^2 matrices");
  }
  for (const auto& t : basis) {
    if (t.rows() != n || t.cols() != n) throw DimensionMismatch("basis matrix is not n x n");
  }
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Complex ip = hs_inner(basis[a], basis[b]);
      if (std::abs(ip - (a == b ? 1.0 : 0.0)) > tol::kHermitian) {
        throw BasisNotOrthonormal("basis fails Tr[T_a^dagger T_b] = delta_ab");
      }
    }
}

std::vector<Complex> flatten(const ComplexMatrix& m) {
  return {m.entries().begin(), m.entries().end()};
}

ComplexMatrix unflatten(std::span<const Complex> v, std::size_t n) {
  return ComplexMatrix::from_row_major(n, n, {v.begin(), v.end()});
}

ComplexMatrix coefficient_matrix(const AMap& a, std::span<const ComplexMatrix> basis) {
  const std::size_t n = a.dim();
  require_orthonormal_basis(basis, n);
  const std::size_t n2 = n * n;
  ComplexMatrix coeffs(n2, n2);
  const ComplexMatrix& am = a.matrix();
  for (std::size_t al = 0; al < n2; ++al) {
    const ComplexMatrix ta = basis[al].adjoint();
    for (std::size_t be = 0; be < n2; ++be) {
      const ComplexMatrix probe = kron(ta, basis[be].transpose());
      Complex tr = 0.0;
      for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j) tr += am(i, j) * probe(j, i);
      coeffs(al, be) = tr;
    }
  }
  return coeffs;
}

Classification classify(std::span<const double> eigenvalues) {
  const bool negative = std::any_of(eigenvalues.begin(), eigenvalues.end(),
                                    [](double l) { return l < -kCpThreshold; });
  return negative ? Classification::NCP : Classification::CP;
}

CanonicalDecomposition canonical_decompose(const AMap& a, std::span<const ComplexMatrix> basis) {
  const ComplexMatrix coeffs = coefficient_matrix(a, basis);
  const HermitianEig eig = eig_hermitian(coeffs);
  const std::size_t n = a.dim();

  CanonicalDecomposition d;
  d.dim = n;
  d.eigenvalues = eig.eigenvalues;
  d.operators.reserve(basis.size());
  for (std::size_t mu = 0; mu < basis.size(); ++mu) {
    ComplexMatrix c(n, n);
    for (std::size_t al = 0; al < basis.size(); ++al) c += eig.eigenvectors(al, mu) * basis[al];
    d.operators.push_back(std::move(c));
  }
  d.classification = classify(d.eigenvalues);
  // Roundoff-level negatives (above -1e-10) do not count toward negativity.
  for (double l : d.eigenvalues)
    if (l < -kCpThreshold) d.negativity -= l;
  return d;
}

CanonicalDecomposition canonical_decompose(const AMap& a) {
  const auto basis = default_basis(a.dim());
  return canonical_decompose(a, basis);
}

ComplexMatrix reconstruct_amap(const CanonicalDecomposition& d) {
  const std::size_t n2 = d.dim * d.dim;
  ComplexMatrix out(n2, n2);
  for (std::size_t mu = 0; mu < d.operators.size(); ++mu) {
    if (d.eigenvalues[mu] == 0.0) continue;
    out += Complex(d.eigenvalues[mu]) * kron(d.operators[mu], d.operators[mu].conjugate());
  }
  return out;
}

ComplexMatrix trace_identity(const CanonicalDecomposition& d) {
  ComplexMatrix out(d.dim, d.dim);
  for (std::size_t mu = 0; mu < d.operators.size(); ++mu) {
    out += Complex(d.eigenvalues[mu]) * (d.operators[mu].adjoint() * d.operators[mu]);
  }
  return out;
}

ComplexMatrix realign(const ComplexMatrix& m, std::size_t n) {
  require_map_shape(n, m);
  ComplexMatrix out(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(n * i + j, n * k + l) = m(n * i + k, n * j + l);
  return out;
}

BMatrix realign_to_b(const AMap& a) { return {a.dim(), realign(a.matrix(), a.dim())}; }

ComplexMatrix apply_linear(const AMap& a, const ComplexMatrix& q) {
  if (q.rows() != a.dim() || q.cols() != a.dim()) {
    throw DimensionMismatch("apply: operand is not n x n");
  }
  const auto v = flatten(q);
  return unflatten(qdyn::apply(a.matrix(), v), a.dim());
}

MappedState apply_map(const AMap& a, const DensityMatrix& rho) {
  return finish(apply_linear(a, rho.matrix()));
}

MappedState apply_canonical(const CanonicalDecomposition& d, const DensityMatrix& rho) {
  if (rho.dim() != d.dim) throw DimensionMismatch("apply_canonical: state dimension differs");
  ComplexMatrix out(d.dim, d.dim);
  for (std::size_t mu = 0; mu < d.operators.size(); ++mu) {
    if (d.eigenvalues[mu] == 0.0) continue;
    const ComplexMatrix& c = d.operators[mu];
    out += Complex(d.eigenvalues[mu]) * (c * rho.matrix() * c.adjoint());
  }
  return finish(std::move(out));
}

double check_semigroup(const MapFamily& family, double t, double tau) {
  const AMap whole = family(t + tau);
  const AMap first = family(tau);
  const AMap second = family(t);
  if (whole.dim() != first.dim() || whole.dim() != second.dim()) {
    throw DimensionMismatch("check_semigroup: family changes dimension");
  }
  return frobenius_distance(whole.matrix(), second.matrix() * first.matrix());
}

}  // namespace qdyn
