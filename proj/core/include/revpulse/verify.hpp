// Copyright 2026 The revpulse Authors
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

#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "revpulse/control_field.hpp"
#include "revpulse/decoherence.hpp"
#include "revpulse/dynamics.hpp"
#include "revpulse/trajectory.hpp"

namespace revpulse {

struct ComponentErrors {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  double max() const;
};

struct TrackingReport {
  ComponentErrors sup;
  ComponentErrors rms;
  /// Time of the largest component-wise deviation, ps.
  double max_deviation_time = 0.0;
  /// Uhlmann fidelity between the final prescribed and simulated states.
  double final_fidelity = 1.0;
  /// |Omega_R|max / max(omega0) of the driving pulse, when known.
  std::optional<double> strong_coupling_ratio;
};

/// Component-wise sup and RMS differences between two sampled trajectories.
/// Throws ValidationError when the grids differ.
TrackingReport tracking_error(const SampledTrajectory& prescribed,
                              const SampledTrajectory& simulated);
TrackingReport tracking_error(const SampledTrajectory& prescribed,
                              const SimResult& simulated);

/// Largest trace distance over the grid between the full interaction-picture
/// evolution and its rotating-wave counterpart, both started from rho0.
double rwa_deviation(const ControlField& field, const DensityMatrix2& rho0,
                     const TimeGrid& grid, const IntegratorOptions& opts = {});

/// Damped Bloch coefficients recovered by expanding the master-equation
/// dissipators on the Pauli basis with explicit 2x2 algebra: r' = drift r +
/// offset for the undriven system.
struct GeneratorOracle {
  Eigen::Matrix3d drift = Eigen::Matrix3d::Zero();
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();
  double transverse = 0.0;    // -drift(0,0)
  double longitudinal = 0.0;  // -drift(2,2)
  double w_drive = 0.0;       // offset(2)
  double equilibrium_w = 0.0;
};

GeneratorOracle generator_oracle(const DecoherenceRates& rates);

/// Central-difference check of a master-equation generator: the error of
/// (rho(t+h) - rho(t-h)) / 2h against rhs(t, rho(t)) for h, h/2, h/4 and the
/// least-squares slope of log(error) against log(h).
struct FdConvergence {
  std::array<double, 3> steps{};
  std::array<double, 3> errors{};
  double slope = 0.0;
};

FdConvergence generator_fd_check(const DensityModel& model,
                                 const DensityMatrix2& rho_start,
                                 double t_start, double t_center, double h,
                                 const IntegratorOptions& opts = {});

/// Worst-case invariant defects over a simulation.
struct Hygiene {
  double trace_defect = 0.0;        // max |Tr rho - 1|
  double hermiticity_defect = 0.0;  // max |rho - rho^dagger|
  double purity_defect = 0.0;       // max |Tr rho^2 - 1|
  double max_bloch_norm = 0.0;
};

Hygiene hygiene(const SimResult& sim);

}  // namespace revpulse
