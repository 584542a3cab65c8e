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

// Two qubits coupled by H = (1/2) sz (x) sx (hbar = omega = 1) and the
// reduced dynamics of the first qubit. Every time argument is the
// dimensionless phase omega*t.

#pragma once

#include <array>

#include "qdyn/dynmap.hpp"
#include "qdyn/linalg.hpp"

namespace qdyn::qubitpair {

ComplexMatrix identity2();
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();

/// Joint state in the basis |00>, |01>, |10>, |11> (first qubit major).
class TwoQubitState {
 public:
  /// Throws NotAState (including for non-4x4 input).
  explicit TwoQubitState(const ComplexMatrix& m);

  const DensityMatrix& density() const noexcept { return rho_; }
  const ComplexMatrix& matrix() const noexcept { return rho_.matrix(); }

 private:
  DensityMatrix rho_;
};

/// Correlators a1 = -<s1y s2x>, a2 = <s1x s2x> that fix the reduced map.
struct InitParams {
  double a1 = 0.0;
  double a2 = 0.0;

  /// Throws InvalidSpec unless |a1|, |a2| <= 1.
  static InitParams direct(double a1, double a2);

  Complex a() const noexcept { return {a1, a2}; }
  double abs_a() const noexcept { return std::abs(a()); }
};

/// (1/2) sz (x) sx.
ComplexMatrix hamiltonian();

/// exp(-i H omega_t).
ComplexMatrix unitary(double omega_t);

InitParams extract_params(const TwoQubitState& rho12);

/// Tr_2[U rho12 U^dagger].
DensityMatrix reduced_dynamics(const TwoQubitState& rho12, double omega_t);

/// Tr_2[rho12].
DensityMatrix initial_reduced_state(const TwoQubitState& rho12);

/// Reduced map for fixed (a1, a2): rows (1,0,0,0), (S a*/2, C, 0, S a*/2),
/// (S a/2, 0, C, S a/2), (0,0,0,1) with C = cos, S = sin of omega_t.
AMap qubit_amap(const InitParams& params, double omega_t);

MapFamily qubit_amap_family(const InitParams& params);

/// Closed form of the Pauli-basis coefficient matrix of qubit_amap.
ComplexMatrix coefficient_matrix_closed(const InitParams& params, double omega_t);

/// Closed-form spectrum of coefficient_matrix_closed, descending:
/// lambda_{1,2 +-} = ((1 +- C) +- sqrt((1 +- C)^2 + |a|^2 S^2)) / 2.
std::array<double, 4> eigenvalues_closed(const InitParams& params, double omega_t);

}  // namespace qdyn::qubitpair
