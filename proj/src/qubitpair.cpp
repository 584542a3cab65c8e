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

#include "qdyn/qubitpair.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qdyn/errors.hpp"

namespace qdyn::qubitpair {

ComplexMatrix identity2() { return ComplexMatrix::identity(2); }
ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_y() { return {{0.0, -kI}, {kI, 0.0}}; }
ComplexMatrix sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

namespace {

DensityMatrix checked_two_qubit(const ComplexMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw NotAState("two-qubit state must be 4x4");
  return DensityMatrix(m);
}

double expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
  return (rho * op).trace().real();
}

}  // namespace

TwoQubitState::TwoQubitState(const ComplexMatrix& m) : rho_(checked_two_qubit(m)) {}

InitParams InitParams::direct(double a1, double a2) {
  if (!std::isfinite(a1) || !std::isfinite(a2) || std::abs(a1) > 1.0 || std::abs(a2) > 1.0) {
    throw InvalidSpec("initial-state parameters must satisfy |a1|, |a2| <= 1");
  }
  return {a1, a2};
}

ComplexMatrix hamiltonian() { return Complex(0.5) * kron(sigma_z(), sigma_x()); }

ComplexMatrix unitary(double omega_t) {
  const double c = std::cos(0.5 * omega_t);
  const Complex is = kI * std::sin(0.5 * omega_t);
  return {
      {c, -is, 0.0, 0.0},
      {-is, c, 0.0, 0.0},
      {0.0, 0.0, c, is},
      {0.0, 0.0, is, c},
  };
}

InitParams extract_params(const TwoQubitState& rho12) {
  const ComplexMatrix& rho = rho12.matrix();
  return {-expectation(rho, kron(sigma_y(), sigma_x())), expectation(rho, kron(sigma_x(), sigma_x()))};
}

DensityMatrix reduced_dynamics(const TwoQubitState& rho12, double omega_t) {
  const ComplexMatrix u = unitary(omega_t);
  const ComplexMatrix evolved = u * rho12.matrix() * u.adjoint();
  return DensityMatrix(partial_trace_second(evolved, 2, 2));
}

DensityMatrix initial_reduced_state(const TwoQubitState& rho12) {
  return DensityMatrix(partial_trace_second(rho12.matrix(), 2, 2));
}

AMap qubit_amap(const InitParams& params, double omega_t) {
  const double c = std::cos(omega_t);
  const double s = std::sin(omega_t);
  const Complex half_sa = 0.5 * s * params.a();
  const Complex half_sac = std::conj(half_sa);
  return AMap(2, ComplexMatrix{
                     {1.0, 0.0, 0.0, 0.0},
                     {half_sac, c, 0.0, half_sac},
                     {half_sa, 0.0, c, half_sa},
                     {0.0, 0.0, 0.0, 1.0},
                 });
}

MapFamily qubit_amap_family(const InitParams& params) {
  return [params](double omega_t) { return qubit_amap(params, omega_t); };
}

ComplexMatrix coefficient_matrix_closed(const InitParams& params, double omega_t) {
  const double c = std::cos(omega_t);
  const double s = std::sin(omega_t);
  const double a1s = params.a1 * s;
  const double a2s = params.a2 * s;
  ComplexMatrix m{
      {2.0 * (1.0 + c), a1s, a2s, 0.0},
      {a1s, 0.0, 0.0, kI * a2s},
      {a2s, 0.0, 0.0, -kI * a1s},
      {0.0, -kI * a2s, kI * a1s, 2.0 * (1.0 - c)},
  };
  return Complex(0.5) * m;
}

std::array<double, 4> eigenvalues_closed(const InitParams& params, double omega_t) {
  const double c = std::cos(omega_t);
  const double s = std::sin(omega_t);
  const double coupling = std::norm(params.a()) * s * s;
  const double p = 1.0 + c;
  const double m = 1.0 - c;
  const double rp = std::sqrt(p * p + coupling);
  const double rm = std::sqrt(m * m + coupling);
  std::array<double, 4> out{0.5 * (p + rp), 0.5 * (p - rp), 0.5 * (m + rm), 0.5 * (m - rm)};
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace qdyn::qubitpair
