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

// Non-Markovianity witnesses built from relative entropy and fidelity of a
// state trajectory rho(t):
//
//   S(t, tau) = S[rho(0) || rho(tau)] - S[rho(t) || rho(t + tau)]
//   G(t, tau) = (F[rho(t), rho(t + tau)] - F[rho(0), rho(tau)]) / F[rho(0), rho(tau)]
//
// Negative values of either are incompatible with CP semigroup dynamics.

#pragma once

#include <functional>
#include <string>

#include "qdyn/dynmap.hpp"

namespace qdyn::witness {

enum class Flag : unsigned {
  SupportViolation = 1u << 0,
  BaselineDegenerate = 1u << 1,
  FallbackUsed = 1u << 2,
};

class Flags {
 public:
  constexpr Flags() = default;

  constexpr bool has(Flag f) const noexcept { return (bits_ & static_cast<unsigned>(f)) != 0; }
  constexpr void set(Flag f) noexcept { bits_ |= static_cast<unsigned>(f); }
  constexpr void merge(Flags other) noexcept { bits_ |= other.bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr unsigned bits() const noexcept { return bits_; }

  /// Semicolon-joined tokens, e.g. "support_violation;fallback_used".
  std::string to_string() const;

  friend constexpr bool operator==(Flags, Flags) = default;

 private:
  unsigned bits_ = 0;
};

struct WitnessSample {
  double omega_t = 0.0;
  double omega_tau = 0.0;
  /// +inf / -inf when one side diverges, NaN when both do.
  double rel_entropy_diff = 0.0;
  /// NaN when the baseline fidelity vanishes.
  double fidelity_diff = 0.0;
  Flags flags;
};

using StateFamily = std::function<DensityMatrix(double)>;

/// Tr[rho (ln rho - ln gamma)], natural log, 0 ln 0 = 0. Returns +inf when
/// more than 1e-10 of rho's weight lies outside the support of gamma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& gamma);

/// True when relative_entropy(rho, gamma) diverges.
bool support_violated(const DensityMatrix& rho, const DensityMatrix& gamma);

/// (Tr sqrt(sqrt(rho) gamma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& gamma);

/// Tr[rho gamma] + 2 sqrt(det rho det gamma); qubits only.
double fidelity_qubit(const DensityMatrix& rho, const DensityMatrix& gamma);

/// Witness values from the four states rho(0), rho(tau), rho(t), rho(t+tau).
struct Trajectory4 {
  const DensityMatrix& initial;
  const DensityMatrix& initial_shifted;
  const DensityMatrix& current;
  const DensityMatrix& current_shifted;
};

WitnessSample evaluate(const Trajectory4& states, double t, double tau);
WitnessSample evaluate(const StateFamily& family, double t, double tau);

double rel_entropy_difference(const StateFamily& family, double t, double tau);
double fidelity_difference(const StateFamily& family, double t, double tau);

/// Combines two relative entropies (baseline, current) into S(t, tau): 0 when
/// `identical`, infinities as documented on WitnessSample.
double combine_rel_entropy(double baseline, double current, bool identical, Flags& flags);

/// Combines baseline and current fidelity into G(t, tau).
double combine_fidelity(double baseline, double current, bool identical, Flags& flags);

/// Baseline fidelities at or below this make G undefined.
inline constexpr double kBaselineFloor = 1e-12;
/// Weight of rho outside supp(gamma) beyond which S(rho||gamma) = +inf.
inline constexpr double kSupportWeight = 1e-10;
/// States closer than this in Frobenius norm count as equal.
inline constexpr double kSameState = 1e-10;

}  // namespace qdyn::witness
