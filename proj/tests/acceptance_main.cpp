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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qdyn/dynmap.hpp"
#include "qdyn/qubitpair.hpp"
#include "qdyn/report.hpp"
#include "qdyn/scenarios.hpp"
#include "qdyn/witness.hpp"
#include "test_util.hpp"

namespace {

using namespace qdyn;
using qubitpair::InitParams;
using scenarios::ScenarioSpec;
using witness::Flag;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kSixth = 1.0 / std::sqrt(6.0);

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.rbegin(), v.rend());
  return v;
}

std::vector<ScenarioSpec> scenario_set() {
  return {ScenarioSpec::pure(0.7), ScenarioSpec::werner(0.25),
          ScenarioSpec::separable(kSixth, kSixth, kSixth, kSixth)};
}

Outcome spectrum_vs_closed_form() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (double abs_a : {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}) {
    // Split |a| over both components so the complex phase is exercised.
    const auto p = InitParams::direct(abs_a * 0.6, abs_a * 0.8);
    for (double t : report::linspace(0.0, kTwoPi, 100)) {
      const auto d = canonical_decompose(qubitpair::qubit_amap(p, t));
      worst = std::max(worst, testing::max_abs_diff_seq(d.eigenvalues, qubitpair::eigenvalues_closed(p, t)));
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-10 && elapsed <= 1.0, fmt("max |err| = %.3g, %.3f s", worst, elapsed)};
}

Outcome ncp_detection() {
  double worst = -std::numeric_limits<double>::infinity();
  for (double abs_a : {1.0 / 3.0, 2.0 / 3.0, 1.0}) {
    const auto p = InitParams::direct(0.0, abs_a);
    for (double t : report::linspace(0.0, kTwoPi, 100)) {
      if (std::abs(std::sin(t)) <= 0.05) continue;
      const auto d = canonical_decompose(qubitpair::qubit_amap(p, t));
      worst = std::max(worst, d.eigenvalues.back());
      if (d.classification != Classification::NCP) return {false, fmt("CP at t = %.4f", t)};
    }
  }
  const auto spot = canonical_decompose(qubitpair::qubit_amap(InitParams::direct(0.0, 2.0 / 3.0), kPi / 2));
  const double lmin = spot.eigenvalues.back();
  const bool pass = worst < -1e-6 && std::abs(lmin + 0.10093) <= 1e-5;
  return {pass, fmt("largest lambda_min = %.3g, spot lambda_min = %.6f", worst, lmin)};
}

Outcome spectrum_equality() {
  double worst = 0.0;
  for (const auto& spec : scenario_set()) {
    const auto params = qubitpair::extract_params(scenarios::initial_joint_state(spec));
    for (double t : report::linspace(0.0, kTwoPi, 25)) {
      const AMap a = qubitpair::qubit_amap(params, t);
      const auto la = sorted_desc(eigvals_hermitian(coefficient_matrix(a, pauli_basis())));
      const auto lb = sorted_desc(eigvals_hermitian(realign_to_b(a).matrix));
      worst = std::max(worst, testing::max_abs_diff_seq(la, lb));
    }
  }
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 100; ++trial) {
    const AMap a = testing::random_valid_amap(rng, 2 + trial % 2);
    const auto la = sorted_desc(eigvals_hermitian(coefficient_matrix(a, default_basis(a.dim()))));
    const auto lb = sorted_desc(eigvals_hermitian(realign_to_b(a).matrix));
    worst = std::max(worst, testing::max_abs_diff_seq(la, lb));
  }
  return {worst <= 1e-10, fmt("max |err| = %.3g", worst)};
}

Outcome dynamics_equivalence() {
  double worst = 0.0;
  for (const auto& spec : scenario_set()) {
    const auto rho12 = scenarios::initial_joint_state(spec);
    const auto params = qubitpair::extract_params(rho12);
    const auto rho0 = qubitpair::initial_reduced_state(rho12);
    for (double t : report::linspace(0.0, kTwoPi, 50)) {
      const AMap a = qubitpair::qubit_amap(params, t);
      const ComplexMatrix joint = qubitpair::reduced_dynamics(rho12, t).matrix();
      worst = std::max(worst, testing::max_abs_diff(joint, apply_map(a, rho0).matrix));
      worst = std::max(worst, testing::max_abs_diff(joint, apply_canonical(canonical_decompose(a), rho0).matrix));
    }
  }
  return {worst <= 1e-10, fmt("max |err| = %.3g", worst)};
}

Outcome closed_form_agreement() {
  double worst = 0.0;
  int flag_mismatch = 0;
  int sentinel_mismatch = 0;
  int divergent = 0;
  auto compare = [&](double c, double n) {
    if (std::isfinite(c) && std::isfinite(n)) {
      worst = std::max(worst, std::abs(c - n));
    } else {
      ++divergent;
      const bool same = (std::isnan(c) && std::isnan(n)) || c == n;
      if (!same) ++sentinel_mismatch;
    }
  };
  const auto grid = report::linspace(0.0, kTwoPi, 25);
  for (double t : grid) {
    for (std::size_t j = 0; j < 25; ++j) {
      const ScenarioSpec specs[3] = {ScenarioSpec::pure(grid[j]), ScenarioSpec::werner(j / 24.0),
                                     ScenarioSpec::separable(kSixth, kSixth, kSixth, kSixth)};
      const double taus[3] = {kPi, kPi, grid[j]};
      for (int k = 0; k < 3; ++k) {
        const auto c = scenarios::witnesses_closed(specs[k], t, taus[k]);
        const auto n = scenarios::witnesses_numerical(specs[k], t, taus[k]);
        compare(c.rel_entropy_diff, n.rel_entropy_diff);
        compare(c.fidelity_diff, n.fidelity_diff);
        if (c.flags.has(Flag::SupportViolation) != n.flags.has(Flag::SupportViolation)) ++flag_mismatch;
        const DensityMatrix closed_state = scenarios::reduced_state_closed(specs[k], t);
        const DensityMatrix num_state = scenarios::state_family(specs[k])(t);
        worst = std::max(worst, testing::max_abs_diff(closed_state.matrix(), num_state.matrix()));
      }
    }
  }
  const bool pass = worst <= 1e-8 && flag_mismatch == 0 && sentinel_mismatch == 0;
  return {pass, fmt("max |err| = %.3g over finite points; %g divergent values, %g mismatches", worst,
                    divergent, flag_mismatch + sentinel_mismatch)};
}

struct SurfaceStats {
  double s_min = std::numeric_limits<double>::infinity();
  double s_max = -std::numeric_limits<double>::infinity();
  double g_min = std::numeric_limits<double>::infinity();
  double g_max = -std::numeric_limits<double>::infinity();
};

SurfaceStats stats(const report::FigureData& fig) {
  SurfaceStats s;
  for (const auto& r : fig.rows) {
    const double sv = r.sample.rel_entropy_diff;
    const double gv = r.sample.fidelity_diff;
    if (std::isfinite(sv)) {
      s.s_min = std::min(s.s_min, sv);
      s.s_max = std::max(s.s_max, sv);
    }
    if (std::isfinite(gv)) {
      s.g_min = std::min(s.g_min, gv);
      s.g_max = std::max(s.g_max, gv);
    }
  }
  return s;
}

Outcome figure_reproduction() {
  const unsigned jobs = report::default_jobs();
  double slowest = 0.0;
  auto timed = [&](int which) {
    const auto start = Clock::now();
    auto fig = report::compute_figure(which, 200, jobs);
    slowest = std::max(slowest, seconds_since(start));
    return fig;
  };

  const auto f1 = stats(timed(1));
  const bool ok1 = f1.s_min < -1e-3 && f1.g_min < -1e-3;

  const auto fig2 = timed(2);
  const auto f2 = stats(fig2);
  double x1_dev = 0.0;
  for (const auto& r : fig2.rows) {
    if (r.param != 1.0) continue;
    x1_dev = std::max({x1_dev, std::abs(r.sample.rel_entropy_diff), std::abs(r.sample.fidelity_diff)});
  }
  const bool ok2 = f2.g_min <= -0.9 && x1_dev <= 1e-12;

  const auto f3 = stats(timed(3));
  const bool ok3 = f3.s_min < -1e-3 && f3.s_max > 1e-3 && f3.g_min < -1e-3 && f3.g_max > 1e-3;

  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "fig1 min S %.3f, min G %.3f; fig2 min G %.3f, x=1 dev %.2g; fig3 S [%.3f, %.3f], "
                "G [%.3f, %.3f]; slowest %.2f s on %u jobs",
                f1.s_min, f1.g_min, f2.g_min, x1_dev, f3.s_min, f3.s_max, f3.g_min, f3.g_max, slowest, jobs);
  return {ok1 && ok2 && ok3 && slowest <= 10.0, buf};
}

Outcome markovian_control() {
  std::mt19937_64 rng(7);
  double s_min = std::numeric_limits<double>::infinity();
  double g_min = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 3; ++trial) {
    const auto family = testing::depolarizing_family(testing::random_density(rng, 2));
    for (double t : report::linspace(0.0, 5.0, 50)) {
      for (double tau : report::linspace(0.1, 5.0, 50)) {
        const auto s = witness::evaluate(family, t, tau);
        s_min = std::min(s_min, s.rel_entropy_diff);
        g_min = std::min(g_min, s.fidelity_diff);
      }
    }
  }
  return {s_min >= -1e-10 && g_min >= -1e-10, fmt("min S = %.3g, min G = %.3g", s_min, g_min)};
}

Outcome semigroup_violation() {
  const double dev = check_semigroup(qubitpair::qubit_amap_family(InitParams::direct(0.0, 0.0)), kPi / 3, kPi / 3);
  return {dev >= 0.1, fmt("deviation = %.6f", dev)};
}

Outcome witness_point_value() {
  const auto s = witness::evaluate(scenarios::state_family(ScenarioSpec::werner(0.0)), kPi / 2, kPi);
  return {std::abs(s.fidelity_diff + 1.0) <= 1e-9, fmt("G = %.12f", s.fidelity_diff)};
}

Outcome identity_edge_cases() {
  int failures = 0;
  for (double a1 : {0.0, 0.5, -1.0}) {
    for (double a2 : {0.0, 2.0 / 3.0, 1.0}) {
      const auto d = canonical_decompose(qubitpair::qubit_amap(InitParams::direct(a1, a2), 0.0));
      const std::vector<double> expected{2.0, 0.0, 0.0, 0.0};
      if (d.classification != Classification::CP) ++failures;
      if (testing::max_abs_diff_seq(d.eigenvalues, expected) > 1e-12) ++failures;
    }
  }
  std::vector<ScenarioSpec> specs = scenario_set();
  specs.push_back(ScenarioSpec::werner(0.0));
  specs.push_back(ScenarioSpec::pure(0.0));
  for (const auto& spec : specs) {
    for (double tau : report::linspace(0.0, kTwoPi, 17)) {
      for (const auto& s : {scenarios::witnesses_numerical(spec, 0.0, tau), scenarios::witnesses_closed(spec, 0.0, tau)}) {
        if (s.rel_entropy_diff != 0.0 || s.fidelity_diff != 0.0) ++failures;
      }
    }
  }
  return {failures == 0, fmt("%g exceptions", failures)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"canonical spectrum matches closed form", spectrum_vs_closed_form},
      {"NCP detection", ncp_detection},
      {"coefficient and B spectra agree", spectrum_equality},
      {"three-way dynamics equivalence", dynamics_equivalence},
      {"closed-form witnesses match numerics", closed_form_agreement},
      {"figure surfaces reproduce", figure_reproduction},
      {"Markovian control stays non-negative", markovian_control},
      {"semigroup violation", semigroup_violation},
      {"Werner point value G = -1", witness_point_value},
      {"identity edge cases", identity_edge_cases},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d. %s (%s)\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
