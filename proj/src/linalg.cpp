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

#include "qdyn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": shapes " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square() || m.empty()) {
    throw DimensionMismatch(std::string(what) + ": expected a non-empty square matrix");
  }
}

constexpr int kMaxSweeps = 64;

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw DimensionMismatch("ComplexMatrix: ragged initializer");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_row_major(std::size_t rows, std::size_t cols,
                                            std::vector<Complex> entries) {
  if (entries.size() != rows * cols) {
    throw DimensionMismatch("ComplexMatrix: entry count does not match shape");
  }
  ComplexMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(entries);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matrix product: inner dimensions differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<Complex> apply(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw DimensionMismatch("apply: vector length differs");
  std::vector<Complex> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "frobenius_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(s);
}

double hermiticity_defect(const ComplexMatrix& m) {
  require_square(m, "hermiticity_defect");
  const double norm = m.frobenius_norm();
  if (norm == 0.0) return 0.0;
  return frobenius_distance(m, m.adjoint()) / norm;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  require_square(m, "hermitian_part");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out(r, r) = m(r, r).real();
    for (std::size_t c = r + 1; c < m.cols(); ++c) {
      const Complex z = 0.5 * (m(r, c) + std::conj(m(c, r)));
      out(r, c) = z;
      out(c, r) = std::conj(z);
    }
  }
  return out;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "hs_inner");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::conj(a.entries()[i]) * b.entries()[i];
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix& m, std::size_t d1, std::size_t d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw DimensionMismatch("partial_trace_second: matrix is not (d1*d2)x(d1*d2)");
  }
  ComplexMatrix out(d1, d1);
  for (std::size_t r = 0; r < d1; ++r)
    for (std::size_t rp = 0; rp < d1; ++rp)
      for (std::size_t s = 0; s < d2; ++s) out(r, rp) += m(r * d2 + s, rp * d2 + s);
  return out;
}

ComplexMatrix partial_trace_first(const ComplexMatrix& m, std::size_t d1, std::size_t d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw DimensionMismatch("partial_trace_first: matrix is not (d1*d2)x(d1*d2)");
  }
  ComplexMatrix out(d2, d2);
  for (std::size_t s = 0; s < d2; ++s)
    for (std::size_t sp = 0; sp < d2; ++sp)
      for (std::size_t r = 0; r < d1; ++r) out(s, sp) += m(r * d2 + s, r * d2 + sp);
  return out;
}

ComplexMatrix HermitianEig::reconstruct() const {
  return apply_spectral(*this, [](double x) { return x; });
}

HermitianEig eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eig_hermitian");
  if (hermiticity_defect(m) > tol::kHermitian) {
    throw NotHermitian("eig_hermitian: input is not hermitian");
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = a.frobenius_norm();
  const double stop = scale * std::numeric_limits<double>::epsilon() * 1e-2;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= stop) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const Complex e = apq / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex ec = std::conj(e);

        // a <- a J with J = [[c, s], [-s conj(e), c conj(e)]] on columns p, q.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * ec * akq;
          a(k, q) = s * akp + c * ec * akq;
        }
        // a <- J^dagger a.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * apk + c * e * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * ec * vkq;
          v(k, q) = s * vkp + c * ec * vkq;
        }
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  // Phase fix: first significant component real and positive.
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t row = 0; row < n; ++row) {
      const double mag = std::abs(v(row, col));
      if (mag > tol::kPhase) {
        const Complex rot = std::conj(v(row, col)) / mag;
        for (std::size_t k = 0; k < n; ++k) v(k, col) *= rot;
        v(row, col) = mag;
        break;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

  double radius = 0.0;
  for (double d : diag) radius = std::max(radius, std::abs(d));
  const double tie = tol::kReconstruction * std::max(1.0, radius);
  auto lex_less = [&](std::size_t x, std::size_t y) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex vx = v(k, x);
      const Complex vy = v(k, y);
      if (vx.real() != vy.real()) return vx.real() < vy.real();
      if (vx.imag() != vy.imag()) return vx.imag() < vy.imag();
    }
    return false;
  };
  for (std::size_t begin = 0; begin < n;) {
    std::size_t end = begin + 1;
    while (end < n && diag[order[end - 1]] - diag[order[end]] <= tie) ++end;
    if (end - begin > 1) std::stable_sort(order.begin() + begin, order.begin() + end, lex_less);
    begin = end;
  }

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = diag[order[k]];
    for (std::size_t row = 0; row < n; ++row) out.eigenvectors(row, k) = v(row, order[k]);
  }
  return out;
}

std::vector<double> eigvals_hermitian(const ComplexMatrix& m) { return eig_hermitian(m).eigenvalues; }

ComplexMatrix apply_spectral(const HermitianEig& eig, const std::function<double(double)>& f) {
  const std::size_t n = eig.eigenvalues.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = fk * eig.eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

namespace {

void require_psd(const HermitianEig& eig, const char* what) {
  if (!eig.eigenvalues.empty() && eig.eigenvalues.back() < -tol::kPsd) {
    throw NotPsd(std::string(what) + ": eigenvalue " + std::to_string(eig.eigenvalues.back()) +
                 " is below -1e-10");
  }
}

// Eigenvalues below this are indistinguishable from zero at double precision.
double roundoff_floor(const HermitianEig& eig) {
  double radius = 0.0;
  for (double l : eig.eigenvalues) radius = std::max(radius, std::abs(l));
  return 16.0 * std::numeric_limits<double>::epsilon() * radius *
         static_cast<double>(eig.eigenvalues.size());
}

}  // namespace

ComplexMatrix mat_sqrt_psd(const ComplexMatrix& m) {
  const HermitianEig eig = eig_hermitian(m);
  require_psd(eig, "mat_sqrt_psd");
  const double floor = roundoff_floor(eig);
  return apply_spectral(eig, [floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
}

SpectralLog mat_log_spectral(const ComplexMatrix& m) {
  const HermitianEig eig = eig_hermitian(m);
  require_psd(eig, "mat_log_spectral");
  SpectralLog out;
  out.log = apply_spectral(eig, [](double x) { return x > tol::kSupport ? std::log(x) : 0.0; });
  out.support = apply_spectral(eig, [](double x) { return x > tol::kSupport ? 1.0 : 0.0; });
  out.rank = static_cast<std::size_t>(std::count_if(
      eig.eigenvalues.begin(), eig.eigenvalues.end(), [](double x) { return x > tol::kSupport; }));
  return out;
}

double min_eigenvalue(const ComplexMatrix& m) { return eig_hermitian(m).eigenvalues.back(); }

}  // namespace qdyn
