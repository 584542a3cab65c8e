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

#include "qdyn/report.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "qdyn/errors.hpp"
#include "qdyn/serialize.hpp"

namespace qdyn::report {

using scenarios::ScenarioKind;
using scenarios::ScenarioSpec;

std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  if (steps == 0) throw InvalidSpec("grid needs at least one step");
  if (steps == 1) return {lo};
  std::vector<double> out(steps);
  const double h = (hi - lo) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) out[i] = lo + h * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return {buf, res.ptr};
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<EvolveRow> evolve(const ScenarioSpec& spec, std::span<const double> times, unsigned jobs) {
  const auto rho12 = scenarios::initial_joint_state(spec);
  std::vector<EvolveRow> rows(times.size());
  parallel_for(times.size(), jobs, [&](std::size_t i) {
    const DensityMatrix rho = qubitpair::reduced_dynamics(rho12, times[i]);
    rows[i] = {times[i], rho.matrix(), min_eigenvalue(rho.matrix())};
  });
  return rows;
}

void write_evolve_csv(std::ostream& os, const std::vector<EvolveRow>& rows) {
  os << kEvolveHeader << '\n';
  for (const auto& r : rows) {
    const Complex r01 = r.rho(0, 1);
    const double r00 = r.rho(0, 0).real();
    const double r11 = r.rho(1, 1).real();
    os << format_number(r.omega_t) << ',' << format_number(r00) << ',' << format_number(r01.real())
       << ',' << format_number(r01.imag()) << ',' << format_number(r11) << ','
       << format_number(2.0 * r01.real()) << ',' << format_number(-2.0 * r01.imag()) << ','
       << format_number(r00 - r11) << ',' << format_number(r.min_eig) << '\n';
  }
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Phi:
      return "phi";
    case SweepAxis::X:
      return "x";
    case SweepAxis::Sx:
      return "sx";
    case SweepAxis::Sy:
      return "sy";
    case SweepAxis::Sz:
      return "sz";
    case SweepAxis::D:
      return "d";
    case SweepAxis::OmegaTau:
      return "omega_tau";
  }
  return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  for (auto axis : {SweepAxis::Phi, SweepAxis::X, SweepAxis::Sx, SweepAxis::Sy, SweepAxis::Sz,
                    SweepAxis::D, SweepAxis::OmegaTau}) {
    if (to_string(axis) == name) return axis;
  }
  throw InvalidSpec("unknown sweep axis '" + std::string(name) + "'");
}

SweepAxis default_sweep_axis(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::PureEntangled:
      return SweepAxis::Phi;
    case ScenarioKind::Werner:
      return SweepAxis::X;
    case ScenarioKind::SeparableMixed:
      break;
  }
  return SweepAxis::OmegaTau;
}

namespace {

bool axis_applies(SweepAxis axis, ScenarioKind kind) {
  switch (axis) {
    case SweepAxis::OmegaTau:
      return true;
    case SweepAxis::Phi:
      return kind == ScenarioKind::PureEntangled;
    case SweepAxis::X:
      return kind == ScenarioKind::Werner;
    default:
      return kind == ScenarioKind::SeparableMixed;
  }
}

ScenarioSpec with_param(ScenarioSpec spec, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::Phi:
      spec.phi = value;
      break;
    case SweepAxis::X:
      spec.x = value;
      break;
    case SweepAxis::Sx:
      spec.sx = value;
      break;
    case SweepAxis::Sy:
      spec.sy = value;
      break;
    case SweepAxis::Sz:
      spec.sz = value;
      break;
    case SweepAxis::D:
      spec.d = value;
      break;
    case SweepAxis::OmegaTau:
      break;
  }
  return spec;
}

}  // namespace

std::vector<WitnessRow> witness_grid(const ScenarioSpec& base, SweepAxis axis,
                                     std::span<const double> times, std::span<const double> params,
                                     double omega_tau, unsigned jobs) {
  if (!axis_applies(axis, base.kind)) {
    throw InvalidSpec("sweep axis '" + std::string(to_string(axis)) + "' does not apply to the " +
                      std::string(scenarios::to_string(base.kind)) + " scenario");
  }
  for (double p : params) with_param(base, axis, p).validate();

  const std::size_t np = params.size();
  std::vector<WitnessRow> rows(times.size() * np);
  parallel_for(np, jobs, [&](std::size_t j) {
    const ScenarioSpec spec = with_param(base, axis, params[j]);
    const double tau = axis == SweepAxis::OmegaTau ? params[j] : omega_tau;
    const auto family = scenarios::state_family(spec);
    const DensityMatrix r0 = family(0.0);
    const DensityMatrix rtau = family(tau);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      const DensityMatrix rt = family(t);
      const DensityMatrix rttau = family(t + tau);
      rows[i * np + j] = {t, params[j], witness::evaluate({r0, rtau, rt, rttau}, t, tau)};
    }
  });
  return rows;
}

void write_witness_csv(std::ostream& os, const std::vector<WitnessRow>& rows) {
  os << kWitnessHeader << '\n';
  for (const auto& r : rows) {
    os << format_number(r.omega_t) << ',' << format_number(r.param) << ','
       << format_number(r.sample.rel_entropy_diff) << ',' << format_number(r.sample.fidelity_diff)
       << ',' << r.sample.flags.to_string() << '\n';
  }
}

FigureData compute_figure(int which, std::size_t resolution, unsigned jobs) {
  if (resolution < 2) throw InvalidSpec("figure resolution must be at least 2");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  FigureData fig;
  fig.which = which;
  fig.times = linspace(0.0, kTwoPi, resolution);
  ScenarioSpec spec;
  SweepAxis axis{};
  switch (which) {
    case 1:
      spec = ScenarioSpec::pure(0.0);
      axis = SweepAxis::Phi;
      fig.params = linspace(0.0, kTwoPi, resolution);
      break;
    case 2:
      spec = ScenarioSpec::werner(0.0);
      axis = SweepAxis::X;
      fig.params = linspace(0.0, 1.0, resolution);
      break;
    case 3: {
      const double v = 1.0 / std::sqrt(6.0);
      spec = ScenarioSpec::separable(v, v, v, v);
      axis = SweepAxis::OmegaTau;
      fig.params = linspace(0.0, kTwoPi, resolution);
      break;
    }
    default:
      throw InvalidSpec("figure must be 1, 2 or 3");
  }
  fig.param_name = std::string(to_string(axis));
  fig.rows = witness_grid(spec, axis, fig.times, fig.params, std::numbers::pi, jobs);
  return fig;
}

void write_surface_csv(std::ostream& os, const FigureData& fig, Surface surface) {
  const char* column = surface == Surface::SDiff ? "S_diff" : "G_diff";
  os << "omega_t," << fig.param_name << ',' << column << '\n';
  for (const auto& r : fig.rows) {
    const double v = surface == Surface::SDiff ? r.sample.rel_entropy_diff : r.sample.fidelity_diff;
    os << format_number(r.omega_t) << ',' << format_number(r.param) << ',' << format_number(v) << '\n';
  }
}

std::string surface_filename(int which, Surface surface) {
  return "figure" + std::to_string(which) + (surface == Surface::SDiff ? "_S_diff.csv" : "_G_diff.csv");
}

nlohmann::json decompose_report(const qubitpair::InitParams& params, double omega_t) {
  const AMap a = qubitpair::qubit_amap(params, omega_t);
  const CanonicalDecomposition d = canonical_decompose(a);
  nlohmann::json report = to_json(d);
  report["matrix"] = matrix_to_json(a.matrix());
  report["params"] = {{"a1", params.a1}, {"a2", params.a2}, {"omega_t", omega_t}};
  return report;
}

}  // namespace qdyn::report
