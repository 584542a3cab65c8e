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

#include "qdyn/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qdyn/errors.hpp"

namespace qdyn::scenarios {

using qubitpair::InitParams;
using qubitpair::TwoQubitState;
using witness::Flag;
using witness::WitnessSample;

namespace {

constexpr double kWernerMax = 4.0 / 3.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite(double v) { return std::isfinite(v); }

ComplexMatrix pure_state_matrix(double phi) {
  const double n = 1.0 / std::sqrt(3.0);
  const Complex psi[4] = {0.0, n * std::exp(-kI * phi), n * std::exp(kI * phi), n};
  ComplexMatrix m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return m;
}

ComplexMatrix werner_matrix(double x) {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex psi[4] = {0.0, h, -h, 0.0};
  ComplexMatrix m = ComplexMatrix::identity(4) * Complex(0.25 * x);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) += (1.0 - x) * psi[i] * std::conj(psi[j]);
  return m;
}

ComplexMatrix separable_matrix(const ScenarioSpec& s) {
  using namespace qubitpair;
  const ComplexMatrix id = identity2();
  ComplexMatrix m = ComplexMatrix::identity(4);
  m += Complex(s.sx) * kron(sigma_x(), id);
  m += Complex(s.sy) * kron(sigma_y(), id);
  m += Complex(s.sz) * kron(sigma_z(), id);
  m += Complex(s.d) * kron(sigma_y(), sigma_x());
  return m * Complex(0.25);
}

DensityMatrix as_state(const ComplexMatrix& m) {
  try {
    return DensityMatrix(m);
  } catch (const NotAState& e) {
    throw InvalidSpec(std::string("scenario does not define a state: ") + e.what());
  }
}

WitnessSample combine(double omega_t, double omega_tau, double s_base, double s_cur,
                      double f_base, double f_cur) {
  WitnessSample out;
  out.omega_t = omega_t;
  out.omega_tau = omega_tau;
  const bool identical = omega_t == 0.0;
  out.rel_entropy_diff = witness::combine_rel_entropy(s_base, s_cur, identical, out.flags);
  out.fidelity_diff = witness::combine_fidelity(f_base, f_cur, identical, out.flags);
  return out;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::PureEntangled:
      return "pure";
    case ScenarioKind::Werner:
      return "werner";
    case ScenarioKind::SeparableMixed:
      return "separable";
  }
  return "unknown";
}

ScenarioSpec ScenarioSpec::pure(double phi) {
  ScenarioSpec s;
  s.kind = ScenarioKind::PureEntangled;
  s.phi = phi;
  return s;
}

ScenarioSpec ScenarioSpec::werner(double x) {
  ScenarioSpec s;
  s.kind = ScenarioKind::Werner;
  s.x = x;
  return s;
}

ScenarioSpec ScenarioSpec::separable(double sx, double sy, double sz, double d, bool allow_any_psd) {
  ScenarioSpec s;
  s.kind = ScenarioKind::SeparableMixed;
  s.sx = sx;
  s.sy = sy;
  s.sz = sz;
  s.d = d;
  s.allow_any_psd = allow_any_psd;
  return s;
}

void ScenarioSpec::validate() const {
  switch (kind) {
    case ScenarioKind::PureEntangled:
      if (!finite(phi)) throw InvalidSpec("phi must be finite");
      return;
    case ScenarioKind::Werner:
      if (!finite(x) || x < 0.0 || x > kWernerMax) {
        throw InvalidSpec("Werner parameter x must lie in [0, 4/3]");
      }
      return;
    case ScenarioKind::SeparableMixed: {
      if (!finite(sx) || !finite(sy) || !finite(sz) || !finite(d)) {
        throw InvalidSpec("separable parameters must be finite");
      }
      const double r2 = sx * sx + sy * sy + sz * sz + d * d;
      if (!allow_any_psd && r2 > 1.0 + 1e-12) {
        throw InvalidSpec("separable parameters must satisfy sx^2 + sy^2 + sz^2 + d^2 <= 1");
      }
      as_state(separable_matrix(*this));
      return;
    }
  }
}

TwoQubitState initial_joint_state(const ScenarioSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ScenarioKind::PureEntangled:
      return TwoQubitState(as_state(pure_state_matrix(spec.phi)).matrix());
    case ScenarioKind::Werner:
      return TwoQubitState(as_state(werner_matrix(spec.x)).matrix());
    case ScenarioKind::SeparableMixed:
      break;
  }
  return TwoQubitState(as_state(separable_matrix(spec)).matrix());
}

InitParams params_closed(const ScenarioSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ScenarioKind::PureEntangled:
      return {-(2.0 / 3.0) * std::sin(2.0 * spec.phi), (2.0 / 3.0) * std::cos(2.0 * spec.phi)};
    case ScenarioKind::Werner:
      return {0.0, spec.x - 1.0};
    case ScenarioKind::SeparableMixed:
      break;
  }
  return {-spec.d, 0.0};
}

DensityMatrix reduced_state_closed(const ScenarioSpec& spec, double omega_t) {
  spec.validate();
  const double c = std::cos(omega_t);
  const double s = std::sin(omega_t);
  switch (spec.kind) {
    case ScenarioKind::PureEntangled: {
      const Complex off = c * std::exp(-kI * spec.phi) - kI * s * std::exp(-2.0 * kI * spec.phi);
      return DensityMatrix(ComplexMatrix{{1.0 / 3.0, off / 3.0}, {std::conj(off) / 3.0, 2.0 / 3.0}});
    }
    case ScenarioKind::Werner: {
      const Complex off = kI * (1.0 - spec.x) * s * 0.5;
      return DensityMatrix(ComplexMatrix{{0.5, off}, {std::conj(off), 0.5}});
    }
    case ScenarioKind::SeparableMixed:
      break;
  }
  const Complex st = Complex(spec.sx, -spec.sy) * c - spec.d * s;
  return DensityMatrix(
      ComplexMatrix{{0.5 * (1.0 + spec.sz), 0.5 * st}, {0.5 * std::conj(st), 0.5 * (1.0 - spec.sz)}});
}

witness::StateFamily state_family(const ScenarioSpec& spec) {
  const TwoQubitState rho12 = initial_joint_state(spec);
  return [rho12](double omega_t) { return qubitpair::reduced_dynamics(rho12, omega_t); };
}

WitnessSample witnesses_numerical(const ScenarioSpec& spec, double omega_t, double omega_tau) {
  return witness::evaluate(state_family(spec), omega_t, omega_tau);
}

namespace closed {

double kappa(double phi, double omega_t) {
  return std::sqrt(std::max(0.0, 5.0 - 4.0 * std::sin(2.0 * omega_t) * std::sin(phi)));
}

std::pair<double, double> lambda_pm(double phi, double omega_t) {
  const double k = kappa(phi, omega_t);
  return {(3.0 + k) / 6.0, (3.0 - k) / 6.0};
}

Weights delta_nu(double phi, double omega_t, double omega_tau) {
  const double k = kappa(phi, omega_t);
  const double kt = kappa(phi, omega_t + omega_tau);
  const double overlap =
      std::cos(omega_tau) - std::sin(2.0 * omega_t + omega_tau) * std::sin(phi);
  const double denom = 2.0 * k * kt;
  // The cross weight is the complement of delta: kappa kappa' - 1 - 4(...).
  return {(k * kt + 1.0 + 4.0 * overlap) / denom, (k * kt - 1.0 - 4.0 * overlap) / denom};
}

double fidelity_pure(double phi, double omega_t, double omega_tau) {
  const double sp = std::sin(phi);
  const double prod = (1.0 + std::sin(2.0 * omega_t) * sp) *
                      (1.0 + std::sin(2.0 * (omega_t + omega_tau)) * sp);
  return (5.0 + 2.0 * std::cos(omega_tau) - 2.0 * std::sin(2.0 * omega_t + omega_tau) * sp +
          2.0 * std::sqrt(std::max(0.0, prod))) /
         9.0;
}

std::pair<double, double> p_pm(double x, double omega_t) {
  const double y = (1.0 - x) * std::sin(omega_t);
  return {0.5 * (1.0 + y), 0.5 * (1.0 - y)};
}

double fidelity_werner(double x, double omega_t, double omega_tau) {
  const auto [pp, pm] = p_pm(x, omega_t);
  const auto [qp, qm] = p_pm(x, omega_t + omega_tau);
  return pp * qp + pm * qm + 2.0 * std::sqrt(std::max(0.0, pp * pm * qp * qm));
}

double chi(const ScenarioSpec& spec, double omega_t) {
  const double c = std::cos(omega_t);
  const double a = spec.sx * c - spec.d * std::sin(omega_t);
  return a * a + spec.sy * spec.sy * c * c;
}

double zeta(const ScenarioSpec& spec, double omega_t) {
  return std::sqrt(spec.sz * spec.sz + chi(spec, omega_t));
}

std::pair<double, double> omega_pm(const ScenarioSpec& spec, double omega_t) {
  const double z = zeta(spec, omega_t);
  return {0.5 * (1.0 + z), 0.5 * (1.0 - z)};
}

double r_term(const ScenarioSpec& spec, double omega_t, double omega_tau) {
  const double t2 = omega_t + omega_tau;
  return (spec.sx * spec.sx + spec.sy * spec.sy) * std::cos(omega_t) * std::cos(t2) +
         spec.d * spec.d * std::sin(omega_t) * std::sin(t2) -
         spec.d * spec.sx * std::sin(2.0 * omega_t + omega_tau);
}

Weights mu_eta(const ScenarioSpec& spec, double omega_t, double omega_tau) {
  const double z = zeta(spec, omega_t);
  const double zt = zeta(spec, omega_t + omega_tau);
  const double c = chi(spec, omega_t);
  const double ct = chi(spec, omega_t + omega_tau);
  const double u = z - spec.sz;
  const double ut = zt - spec.sz;
  const double r = r_term(spec, omega_t, omega_tau);
  const double denom = 4.0 * z * zt;
  return {(c * ct / (u * ut) + u * ut + 2.0 * r) / denom,
          (c * ut / u + ct * u / ut - 2.0 * r) / denom};
}

double fidelity_separable(const ScenarioSpec& spec, double omega_t, double omega_tau) {
  const double z = zeta(spec, omega_t);
  const double zt = zeta(spec, omega_t + omega_tau);
  const double dets = std::max(0.0, (1.0 - z * z) * (1.0 - zt * zt));
  return 0.5 * (1.0 + spec.sz * spec.sz + std::sqrt(dets) + r_term(spec, omega_t, omega_tau));
}

double qubit_relative_entropy(std::pair<double, double> at_t, std::pair<double, double> at_t_tau,
                              Weights w) {
  const double lp = std::max(0.0, at_t.first);
  const double lm = std::max(0.0, at_t.second);
  const double mp = std::max(0.0, at_t_tau.first);
  const double mm = std::max(0.0, at_t_tau.second);
  double total = 0.0;
  // l ln{l / (m1^w1 m2^w2)}, with 0 ln 0 = 0 and +inf on lost support.
  auto term = [&](double l, double m1, double w1, double m2, double w2) {
    if (l <= tol::kSupport) return 0.0;
    double acc = l * std::log(l);
    for (auto [m, wt] : {std::pair{m1, w1}, std::pair{m2, w2}}) {
      if (m > tol::kSupport) {
        acc -= l * wt * std::log(m);
      } else if (l * wt > witness::kSupportWeight) {
        return kInf;
      }
    }
    return acc;
  };
  total += term(lp, mp, w.same, mm, w.cross);
  total += term(lm, mp, w.cross, mm, w.same);
  return total;
}

}  // namespace closed

namespace {

double pure_rel_entropy(double phi, double t, double tau) {
  return closed::qubit_relative_entropy(closed::lambda_pm(phi, t), closed::lambda_pm(phi, t + tau),
                                        closed::delta_nu(phi, t, tau));
}

double werner_rel_entropy(double x, double t, double tau) {
  // The eigenvectors of rho_W1 are fixed, so p+ at t pairs with p+ at t + tau.
  return closed::qubit_relative_entropy(closed::p_pm(x, t), closed::p_pm(x, t + tau), {1.0, 0.0});
}

double separable_rel_entropy(const ScenarioSpec& spec, double t, double tau) {
  return closed::qubit_relative_entropy(closed::omega_pm(spec, t), closed::omega_pm(spec, t + tau),
                                        closed::mu_eta(spec, t, tau));
}

bool separable_singular(const ScenarioSpec& spec, double t) {
  const double z = closed::zeta(spec, t);
  return z < closed::kSingularity || z - spec.sz < closed::kSingularity;
}

bool pure_singular(double phi, double t) { return closed::kappa(phi, t) < closed::kSingularity; }

}  // namespace

WitnessSample witnesses_closed(const ScenarioSpec& spec, double omega_t, double omega_tau) {
  spec.validate();
  const double t = omega_t;
  const double tau = omega_tau;
  switch (spec.kind) {
    case ScenarioKind::PureEntangled: {
      const double phi = spec.phi;
      const bool singular = pure_singular(phi, 0.0) || pure_singular(phi, tau) ||
                            pure_singular(phi, t) || pure_singular(phi, t + tau);
      WitnessSample out =
          combine(t, tau, singular ? 0.0 : pure_rel_entropy(phi, 0.0, tau),
                  singular ? 0.0 : pure_rel_entropy(phi, t, tau), closed::fidelity_pure(phi, 0.0, tau),
                  closed::fidelity_pure(phi, t, tau));
      if (singular) {
        const WitnessSample num = witnesses_numerical(spec, t, tau);
        out.rel_entropy_diff = num.rel_entropy_diff;
        out.flags.merge(num.flags);
        out.flags.set(Flag::FallbackUsed);
      }
      return out;
    }
    case ScenarioKind::Werner:
      return combine(t, tau, werner_rel_entropy(spec.x, 0.0, tau), werner_rel_entropy(spec.x, t, tau),
                     closed::fidelity_werner(spec.x, 0.0, tau), closed::fidelity_werner(spec.x, t, tau));
    case ScenarioKind::SeparableMixed:
      break;
  }
  const bool singular = separable_singular(spec, 0.0) || separable_singular(spec, tau) ||
                        separable_singular(spec, t) || separable_singular(spec, t + tau);
  WitnessSample out =
      combine(t, tau, singular ? 0.0 : separable_rel_entropy(spec, 0.0, tau),
              singular ? 0.0 : separable_rel_entropy(spec, t, tau),
              closed::fidelity_separable(spec, 0.0, tau), closed::fidelity_separable(spec, t, tau));
  if (singular) {
    const WitnessSample num = witnesses_numerical(spec, t, tau);
    out.rel_entropy_diff = num.rel_entropy_diff;
    out.flags.merge(num.flags);
    out.flags.set(Flag::FallbackUsed);
  }
  return out;
}

}  // namespace qdyn::scenarios
