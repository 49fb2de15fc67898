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

#include <span>
#include <vector>

#include "revpulse/control_field.hpp"
#include "revpulse/decoherence.hpp"
#include "revpulse/trajectory.hpp"

namespace revpulse {

struct OmegaDelta {
  double omega = 0.0;  // rad/ps
  double delta = 0.0;  // rad/ps
};

/// Inverts the damped Bloch equations for the real coupling and detuning:
///   Omega = [w' + 2 Gamma (1 + w + 2 nbar w)] / v
///   Delta = (G u + u') / v,   G = gamma + Gamma (2 nbar + 1).
/// Throws SingularityError (Prescription) when |v| < kVMin; `t_ps` only
/// labels the error.
OmegaDelta omega_delta_from_traj(double u, double v, double w, double du_dt,
                                 double dw_dt, const DecoherenceRates& rates,
                                 double t_ps = 0.0);

/// phi(t) = integral of (omega0 - Delta) from grid.front(), phi(t0) = 0.
/// The integrand is represented by its cubic spline, which makes the
/// cumulative quadrature fourth order.
std::vector<double> phase_from_detuning(std::span<const double> omega0,
                                        std::span<const double> delta,
                                        const TimeGrid& grid);

/// Omega_R = Omega / (1 + cos 2 phi). Throws SingularityError (Carrier) when
/// the denominator is below kDenomMin.
double rabi_from_omega_phase(double omega, double phi, double t_ps = 0.0);

enum class CarrierPolicy {
  /// First carrier singularity throws.
  Throw,
  /// Keep the raw quotient and record every singular sample time.
  Flag,
};

struct SynthesisOptions {
  CarrierPolicy carrier = CarrierPolicy::Throw;
  ConsistentVOptions consistent_v{};
};

struct PulseSynthesis {
  ControlField field;
  /// Prescribed (u, v, w) on the field grid; v from the closed completion or
  /// the consistent-v integration.
  SampledTrajectory target;
};

/// Trajectory in, control pulse out: evaluate (u, w) and derivatives, complete
/// v, invert for (Omega, Delta), integrate the phase and form Omega_R.
PulseSynthesis synthesize_pulse(const TrajectorySpec& spec,
                                const DecoherenceRates& rates,
                                std::span<const double> omega0,
                                const TimeGrid& grid,
                                const SynthesisOptions& opts = {});

}  // namespace revpulse
