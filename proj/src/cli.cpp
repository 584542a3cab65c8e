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

#include "qdyn/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>

#include "qdyn/errors.hpp"
#include "qdyn/report.hpp"

namespace qdyn::cli {

namespace {

using scenarios::ScenarioKind;
using scenarios::ScenarioSpec;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Options {
  std::string output;
  unsigned jobs = report::default_jobs();
  std::size_t resolution = 200;

  std::string scenario;
  double phi = 0.0;
  double x = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;
  double d = 0.0;
  bool allow_any_psd = false;
  std::optional<double> a1;
  std::optional<double> a2;
  double omega_t = 0.0;
  double omega_tau = std::numbers::pi;

  double t_min = 0.0;
  double t_max = kTwoPi;
  std::optional<std::size_t> t_steps;

  std::string sweep;
  std::optional<double> param_min;
  std::optional<double> param_max;
  std::size_t param_steps = 1;

  int which = 0;
};

ScenarioSpec scenario_from(const Options& o) {
  if (o.scenario == "pure") return ScenarioSpec::pure(o.phi);
  if (o.scenario == "werner") return ScenarioSpec::werner(o.x);
  if (o.scenario == "separable") return ScenarioSpec::separable(o.sx, o.sy, o.sz, o.d, o.allow_any_psd);
  if (o.scenario.empty()) throw InvalidSpec("--scenario is required");
  throw InvalidSpec("unknown scenario '" + o.scenario + "'");
}

double current_param(const ScenarioSpec& s, report::SweepAxis axis, double omega_tau) {
  using report::SweepAxis;
  switch (axis) {
    case SweepAxis::Phi:
      return s.phi;
    case SweepAxis::X:
      return s.x;
    case SweepAxis::Sx:
      return s.sx;
    case SweepAxis::Sy:
      return s.sy;
    case SweepAxis::Sz:
      return s.sz;
    case SweepAxis::D:
      return s.d;
    case SweepAxis::OmegaTau:
      break;
  }
  return omega_tau;
}

// Writes to --output when given, else to `out`.
template <typename Fn>
void emit(const Options& o, std::ostream& out, Fn&& write) {
  if (o.output.empty()) {
    write(out);
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw InvalidSpec("cannot open output file '" + o.output + "'");
  write(file);
}

void cmd_decompose(const Options& o, std::ostream& out) {
  const bool explicit_params = o.a1.has_value() || o.a2.has_value();
  if (explicit_params && !o.scenario.empty()) {
    throw InvalidSpec("give either --scenario or --a1/--a2, not both");
  }
  qubitpair::InitParams params;
  if (explicit_params) {
    params = qubitpair::InitParams::direct(o.a1.value_or(0.0), o.a2.value_or(0.0));
  } else {
    params = qubitpair::extract_params(scenarios::initial_joint_state(scenario_from(o)));
  }
  const auto report = report::decompose_report(params, o.omega_t);
  emit(o, out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
}

std::vector<double> time_axis(const Options& o) {
  if (!(o.t_max >= o.t_min)) throw InvalidSpec("--t-max must not be below --t-min");
  const std::size_t steps = o.t_steps.value_or(o.resolution);
  if (steps < 2) throw InvalidSpec("time grid needs at least 2 steps");
  return report::linspace(o.t_min, o.t_max, steps);
}

void cmd_evolve(const Options& o, std::ostream& out) {
  const auto rows = report::evolve(scenario_from(o), time_axis(o), o.jobs);
  emit(o, out, [&](std::ostream& os) { report::write_evolve_csv(os, rows); });
}

void cmd_witness(const Options& o, std::ostream& out) {
  const ScenarioSpec spec = scenario_from(o);
  const auto axis = o.sweep.empty() ? report::default_sweep_axis(spec.kind)
                                    : report::parse_sweep_axis(o.sweep);
  std::vector<double> params;
  if (o.param_steps <= 1) {
    params = {current_param(spec, axis, o.omega_tau)};
  } else {
    if (!o.param_min || !o.param_max) {
      throw InvalidSpec("--param-min and --param-max are required with --param-steps > 1");
    }
    if (!(*o.param_max >= *o.param_min)) throw InvalidSpec("--param-max must not be below --param-min");
    params = report::linspace(*o.param_min, *o.param_max, o.param_steps);
  }
  const auto rows = report::witness_grid(spec, axis, time_axis(o), params, o.omega_tau, o.jobs);
  emit(o, out, [&](std::ostream& os) { report::write_witness_csv(os, rows); });
}

void cmd_figure(const Options& o, std::ostream& out) {
  const auto fig = report::compute_figure(o.which, o.resolution, o.jobs);
  const std::filesystem::path dir = o.output.empty() ? "." : o.output;
  std::filesystem::create_directories(dir);
  for (auto surface : {report::Surface::SDiff, report::Surface::GDiff}) {
    const auto path = dir / report::surface_filename(o.which, surface);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InvalidSpec("cannot open output file '" + path.string() + "'");
    report::write_surface_csv(file, fig, surface);
    out << path.string() << '\n';
  }
}

void add_scenario_flags(CLI::App& sub, Options& o) {
  sub.add_option("--scenario", o.scenario, "Initial two-qubit state")
      ->check(CLI::IsMember({"pure", "werner", "separable"}));
  sub.add_option("--phi", o.phi, "Phase of the pure entangled state (radians)");
  sub.add_option("--x", o.x, "Werner mixing parameter in [0, 4/3]");
  sub.add_option("--sx", o.sx, "Separable state: <s1x>");
  sub.add_option("--sy", o.sy, "Separable state: <s1y>");
  sub.add_option("--sz", o.sz, "Separable state: <s1z>");
  sub.add_option("--d", o.d, "Separable state: <s1y s2x>");
  sub.add_flag("--allow-any-psd", o.allow_any_psd,
               "Accept any PSD separable state instead of the unit-ball check");
}

void add_time_flags(CLI::App& sub, Options& o) {
  sub.add_option("--t-min", o.t_min, "First omega*t grid point");
  sub.add_option("--t-max", o.t_max, "Last omega*t grid point");
  sub.add_option("--t-steps", o.t_steps, "Number of omega*t points (default: --resolution)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dynamical maps, CP/NCP classification and non-Markovianity witnesses", "qdyn"};
  app.require_subcommand(1);
  app.add_option("--output", o.output, "Output file (directory for figure); default stdout");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--resolution", o.resolution, "Grid points per axis")->check(CLI::Range(2, 100000));

  auto* decompose = app.add_subcommand("decompose", "Canonical decomposition of the reduced map");
  add_scenario_flags(*decompose, o);
  decompose->add_option("--a1", o.a1, "Correlator a1 = -<s1y s2x>");
  decompose->add_option("--a2", o.a2, "Correlator a2 = <s1x s2x>");
  decompose->add_option("--omega-t", o.omega_t, "Dimensionless time omega*t");

  auto* evolve = app.add_subcommand("evolve", "Reduced state of qubit 1 over an omega*t grid");
  add_scenario_flags(*evolve, o);
  add_time_flags(*evolve, o);

  auto* witness = app.add_subcommand("witness", "S(t,tau) and G(t,tau) over a grid");
  add_scenario_flags(*witness, o);
  add_time_flags(*witness, o);
  witness->add_option("--omega-tau", o.omega_tau, "Dimensionless delay omega*tau (default pi)");
  witness->add_option("--sweep", o.sweep, "Second axis: phi, x, sx, sy, sz, d or omega_tau");
  witness->add_option("--param-min", o.param_min, "First value of the swept parameter");
  witness->add_option("--param-max", o.param_max, "Last value of the swept parameter");
  witness->add_option("--param-steps", o.param_steps, "Number of swept values (default 1)");

  auto* figure = app.add_subcommand("figure", "Witness surfaces for figures 1-3");
  figure->add_option("which,--which", o.which, "Figure number")->required()->check(CLI::Range(1, 3));

  for (auto* sub : {decompose, evolve, witness, figure}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*decompose) cmd_decompose(o, out);
    if (*evolve) cmd_evolve(o, out);
    if (*witness) cmd_witness(o, out);
    if (*figure) cmd_figure(o, out);
  } catch (const InvalidSpec& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace qdyn::cli
