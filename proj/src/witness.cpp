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

#include "qdyn/witness.hpp"

#include <cmath>
#include <limits>

#include "qdyn/errors.hpp"

namespace qdyn::witness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) throw DimensionMismatch(std::string(what) + ": state dimensions differ");
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += (a(i, j) * b(j, i)).real();
  return s;
}

double det2(const ComplexMatrix& m) { return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real(); }

// Determinants at the roundoff level of a pure qubit count as zero.
double clamped_det2(const ComplexMatrix& m) {
  const double d = det2(m);
  const double floor = 32.0 * std::numeric_limits<double>::epsilon() * std::norm(m.trace());
  return d > floor ? d : 0.0;
}

bool same_state(const DensityMatrix& a, const DensityMatrix& b) {
  return frobenius_distance(a.matrix(), b.matrix()) <= kSameState;
}

struct RelEntropyParts {
  double value;
  bool diverges;
};

RelEntropyParts relative_entropy_parts(const DensityMatrix& rho, const DensityMatrix& gamma) {
  require_same_dim(rho, gamma, "relative_entropy");
  if (same_state(rho, gamma)) return {0.0, false};
  const SpectralLog log_rho = mat_log_spectral(rho.matrix());
  const SpectralLog log_gamma = mat_log_spectral(gamma.matrix());
  const double outside = 1.0 - trace_product(rho.matrix(), log_gamma.support);
  if (outside > kSupportWeight) return {kInf, true};
  return {trace_product(rho.matrix(), log_rho.log) - trace_product(rho.matrix(), log_gamma.log),
          false};
}

}  // namespace

std::string Flags::to_string() const {
  std::string out;
  auto add = [&](Flag f, const char* token) {
    if (!has(f)) return;
    if (!out.empty()) out += ';';
    out += token;
  };
  add(Flag::SupportViolation, "support_violation");
  add(Flag::BaselineDegenerate, "baseline_degenerate");
  add(Flag::FallbackUsed, "fallback_used");
  return out;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& gamma) {
  return relative_entropy_parts(rho, gamma).value;
}

bool support_violated(const DensityMatrix& rho, const DensityMatrix& gamma) {
  return relative_entropy_parts(rho, gamma).diverges;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& gamma) {
  require_same_dim(rho, gamma, "fidelity");
  if (same_state(rho, gamma)) return 1.0;
  const ComplexMatrix root = mat_sqrt_psd(rho.matrix());
  const ComplexMatrix inner = hermitian_part(root * gamma.matrix() * root);
  const double tr = mat_sqrt_psd(inner).trace().real();
  return tr * tr;
}

double fidelity_qubit(const DensityMatrix& rho, const DensityMatrix& gamma) {
  if (rho.dim() != 2 || gamma.dim() != 2) throw DimensionMismatch("fidelity_qubit: qubits only");
  if (same_state(rho, gamma)) return 1.0;
  const double dets = clamped_det2(rho.matrix()) * clamped_det2(gamma.matrix());
  return trace_product(rho.matrix(), gamma.matrix()) + 2.0 * std::sqrt(dets);
}

double combine_rel_entropy(double baseline, double current, bool identical, Flags& flags) {
  if (identical) {
    if (std::isinf(baseline)) flags.set(Flag::SupportViolation);
    return 0.0;
  }
  const bool base_inf = std::isinf(baseline);
  const bool cur_inf = std::isinf(current);
  if (base_inf || cur_inf) flags.set(Flag::SupportViolation);
  if (base_inf && cur_inf) return kNaN;
  if (base_inf) return kInf;
  if (cur_inf) return -kInf;
  return baseline - current;
}

double combine_fidelity(double baseline, double current, bool identical, Flags& flags) {
  if (!(baseline > kBaselineFloor)) {
    flags.set(Flag::BaselineDegenerate);
    return kNaN;
  }
  if (identical) return 0.0;
  return (current - baseline) / baseline;
}

WitnessSample evaluate(const Trajectory4& states, double t, double tau) {
  WitnessSample sample;
  sample.omega_t = t;
  sample.omega_tau = tau;
  const bool identical = states.initial.matrix() == states.current.matrix() &&
                         states.initial_shifted.matrix() == states.current_shifted.matrix();

  const auto base = relative_entropy_parts(states.initial, states.initial_shifted);
  const auto cur = identical ? base : relative_entropy_parts(states.current, states.current_shifted);
  sample.rel_entropy_diff = combine_rel_entropy(base.value, cur.value, identical, sample.flags);

  const double f0 = fidelity(states.initial, states.initial_shifted);
  const double ft = identical ? f0 : fidelity(states.current, states.current_shifted);
  sample.fidelity_diff = combine_fidelity(f0, ft, identical, sample.flags);
  return sample;
}

WitnessSample evaluate(const StateFamily& family, double t, double tau) {
  const DensityMatrix r0 = family(0.0);
  const DensityMatrix rtau = family(tau);
  const DensityMatrix rt = family(t);
  const DensityMatrix rttau = family(t + tau);
  return evaluate(Trajectory4{r0, rtau, rt, rttau}, t, tau);
}

double rel_entropy_difference(const StateFamily& family, double t, double tau) {
  return evaluate(family, t, tau).rel_entropy_diff;
}

double fidelity_difference(const StateFamily& family, double t, double tau) {
  return evaluate(family, t, tau).fidelity_diff;
}

}  // namespace qdyn::witness
