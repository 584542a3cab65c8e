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

// Grid sweeps and their CSV / JSON renderings.

#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qdyn/scenarios.hpp"

namespace qdyn::report {

/// `steps` evenly spaced points from lo to hi inclusive (steps >= 2), or
/// {lo} when steps == 1.
std::vector<double> linspace(double lo, double hi, std::size_t steps);

/// Locale-independent, 12 significant digits; "inf", "-inf", "nan".
std::string format_number(double v);

/// Runs body(i) for i in [0, count) on up to `jobs` threads. Results must be
/// written to slots indexed by i so assembly order is fixed.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

/// std::thread::hardware_concurrency(), at least 1.
unsigned default_jobs();

struct EvolveRow {
  double omega_t = 0.0;
  ComplexMatrix rho;
  double min_eig = 0.0;
};

std::vector<EvolveRow> evolve(const scenarios::ScenarioSpec& spec, std::span<const double> times,
                              unsigned jobs);

inline constexpr const char* kEvolveHeader =
    "omega_t,rho00_re,rho01_re,rho01_im,rho11_re,bloch_x,bloch_y,bloch_z,min_eig";
void write_evolve_csv(std::ostream& os, const std::vector<EvolveRow>& rows);

/// Quantity varied along the second grid axis of a witness sweep.
enum class SweepAxis { Phi, X, Sx, Sy, Sz, D, OmegaTau };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view name);
SweepAxis default_sweep_axis(scenarios::ScenarioKind kind);

struct WitnessRow {
  double omega_t = 0.0;
  double param = 0.0;
  witness::WitnessSample sample;
};

/// Witness values on times x params (time-major: all params for the first
/// time, then the next). Uses the matrix path.
std::vector<WitnessRow> witness_grid(const scenarios::ScenarioSpec& base, SweepAxis axis,
                                     std::span<const double> times, std::span<const double> params,
                                     double omega_tau, unsigned jobs);

inline constexpr const char* kWitnessHeader = "omega_t,param,S_diff,G_diff,flags";
void write_witness_csv(std::ostream& os, const std::vector<WitnessRow>& rows);

struct FigureData {
  int which = 0;
  /// Name of the second axis: "phi", "x" or "omega_tau".
  std::string param_name;
  std::vector<double> times;
  std::vector<double> params;
  /// Time-major, times.size() * params.size() entries.
  std::vector<WitnessRow> rows;
};

/// Figure surfaces: 1 = pure state over (omega_t, phi) with omega_tau = pi;
/// 2 = Werner over (omega_t, x in [0, 1]) with omega_tau = pi; 3 = separable
/// with sx = sy = sz = d = 1/sqrt(6) over (omega_t, omega_tau).
/// Throws InvalidSpec for other values of `which` or resolution < 2.
FigureData compute_figure(int which, std::size_t resolution, unsigned jobs);

enum class Surface { SDiff, GDiff };

/// Header "omega_t,<param>,S_diff" (or G_diff), one row per grid point.
void write_surface_csv(std::ostream& os, const FigureData& fig, Surface surface);

/// figure<k>_S_diff.csv / figure<k>_G_diff.csv.
std::string surface_filename(int which, Surface surface);

/// Flat report: AMap {dim, matrix} plus decomposition {eigenvalues,
/// operators, classification, negativity} and the map parameters.
nlohmann::json decompose_report(const qubitpair::InitParams& params, double omega_t);

}  // namespace qdyn::report
