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

// Three correlated two-qubit initial states evolved under qubitpair::unitary,
// each with closed-form expressions for the reduced state and both
// witnesses. The closed forms are evaluated from scalar formulas only and
// serve as an independent check on the matrix path.

#pragma once

#include <string_view>
#include <utility>

#include "qdyn/qubitpair.hpp"
#include "qdyn/witness.hpp"

namespace qdyn::scenarios {

enum class ScenarioKind { PureEntangled, Werner, SeparableMixed };

std::string_view to_string(ScenarioKind kind);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::PureEntangled;
  /// PureEntangled: (e^{-i phi}|01> + e^{i phi}|10> + |11>) / sqrt(3).
  double phi = 0.0;
  /// Werner: (x/4) I + (1 - x)|Psi-><Psi-|, valid for 0 <= x <= 4/3.
  double x = 0.0;
  /// SeparableMixed: (I + sx s1x + sy s1y + sz s1z + d s1y s2x) / 4.
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;
  double d = 0.0;
  /// Accept any separable-family state that is numerically PSD instead of
  /// requiring sx^2 + sy^2 + sz^2 + d^2 <= 1.
  bool allow_any_psd = false;

  static ScenarioSpec pure(double phi);
  static ScenarioSpec werner(double x);
  static ScenarioSpec separable(double sx, double sy, double sz, double d,
                                bool allow_any_psd = false);

  /// Throws InvalidSpec.
  void validate() const;
};

/// Throws InvalidSpec.
qubitpair::TwoQubitState initial_joint_state(const ScenarioSpec& spec);

/// Correlators as stated for each family (not measured from the state).
qubitpair::InitParams params_closed(const ScenarioSpec& spec);

/// Reduced state of qubit 1 from the closed-form expressions.
DensityMatrix reduced_state_closed(const ScenarioSpec& spec, double omega_t);

/// t -> Tr_2[U(t) rho12 U(t)^dagger].
witness::StateFamily state_family(const ScenarioSpec& spec);

/// Witnesses through the matrix path (unitary, partial trace, matrix
/// log/sqrt).
witness::WitnessSample witnesses_numerical(const ScenarioSpec& spec, double omega_t,
                                           double omega_tau);

/// Witnesses from the closed-form scalar expressions. Falls back to the
/// matrix path (flagging FallbackUsed) where a closed form has a vanishing
/// denominator.
witness::WitnessSample witnesses_closed(const ScenarioSpec& spec, double omega_t,
                                        double omega_tau);

namespace closed {

/// Overlap weights between the eigenbases at t and t + tau: `same` pairs the
/// larger eigenvalue at t with the larger one at t + tau, `cross` with the
/// smaller.
struct Weights {
  double same = 0.0;
  double cross = 0.0;
};

/// Pure entangled family.
double kappa(double phi, double omega_t);
std::pair<double, double> lambda_pm(double phi, double omega_t);
Weights delta_nu(double phi, double omega_t, double omega_tau);
double fidelity_pure(double phi, double omega_t, double omega_tau);

/// Werner family.
std::pair<double, double> p_pm(double x, double omega_t);
double fidelity_werner(double x, double omega_t, double omega_tau);

/// Separable family.
double chi(const ScenarioSpec& spec, double omega_t);
double zeta(const ScenarioSpec& spec, double omega_t);
std::pair<double, double> omega_pm(const ScenarioSpec& spec, double omega_t);
double r_term(const ScenarioSpec& spec, double omega_t, double omega_tau);
Weights mu_eta(const ScenarioSpec& spec, double omega_t, double omega_tau);
double fidelity_separable(const ScenarioSpec& spec, double omega_t, double omega_tau);

/// Denominators below this trigger the numerical fallback.
inline constexpr double kSingularity = 1e-9;

/// Qubit relative entropy from the two spectra and overlap weights:
/// l+ ln{l+ / (m+^same m-^cross)} + l- ln{l- / (m+^cross m-^same)}.
double qubit_relative_entropy(std::pair<double, double> at_t, std::pair<double, double> at_t_tau,
                              Weights w);

}  // namespace closed

}  // namespace qdyn::scenarios
