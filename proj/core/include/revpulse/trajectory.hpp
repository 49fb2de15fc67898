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

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "revpulse/decoherence.hpp"
#include "revpulse/quantum_core.hpp"

namespace revpulse {

/// Guard for every division by v.
inline constexpr double kVMin = 1e-6;

/// Sigmoid population transfer w = a_i (1 - g) + a_f g, g = 1/(1 + e^{-alpha t}),
/// with a Gaussian coherence u = A exp(-(t - tau)^2 / (2 sigma^2)).
struct Transfer {
  double a_i = -1.0;
  double a_f = 1.0;
  double alpha = 0.01;     // ps^-1
  double amplitude = 0.8;  // A
  double tau = 0.0;        // ps
  double sigma = 100.0;    // ps

  friend bool operator==(const Transfer&, const Transfer&) = default;
};

/// Transfer with a population ripple: w + chi cos(omega t).
struct Oscillatory {
  Transfer base;
  double chi = 0.0;
  double omega = 0.0;  // rad/ps

  friend bool operator==(const Oscillatory&, const Oscillatory&) = default;
};

/// Chirped, decaying Rabi oscillation:
/// w = k1 exp(-a t^2) cos(omega1 t + b t^2), u = k2 sin(omega2 t).
struct RabiDecay {
  double k1 = 1.0;
  double k2 = 0.0;
  double decay = 0.0;   // a, ps^-2
  double chirp = 0.0;   // b, ps^-2
  double omega1 = 0.0;  // rad/ps
  double omega2 = 0.0;  // rad/ps

  friend bool operator==(const RabiDecay&, const RabiDecay&) = default;
};

using TrajectorySpec = std::variant<Transfer, Oscillatory, RabiDecay>;

std::string_view family_name(const TrajectorySpec& spec);

/// Parameter invariants of each family; throws ValidationError naming the
/// offending parameter.
void validate(const TrajectorySpec& spec);

/// Prescribed components and their exact time derivatives at one instant.
struct TrajPoint {
  double t = 0.0;  // ps
  double u = 0.0;
  double w = 0.0;
  double du_dt = 0.0;  // ps^-1
  double dw_dt = 0.0;  // ps^-1
};

TrajPoint eval_components(const TrajectorySpec& spec, double t_ps);

/// Bloch vectors sampled on a grid (prescribed or measured).
struct SampledTrajectory {
  TimeGrid grid;
  std::vector<BlochVector> points;
};

struct ClosedCompletion {
  double v = 0.0;
  std::optional<double> dv_dt;
};

/// v = +sqrt(1 - u^2 - w^2) for a pure state. Throws SingularityError
/// (OffSphere) when u^2 + w^2 > 1, and (BlochCompletion) when the derivative
/// is requested but v < kVMin.
ClosedCompletion complete_v_closed(const TrajPoint& p, bool with_derivative = true);

struct ConsistentVOptions {
  double rtol = 1e-12;
  double atol = 1e-15;
  /// Upper bound on the internal step, ps.
  double max_step = 50.0;
};

/// Integrates the v-component equation that the prescribed (u, w) force on an
/// open system. With s = v^2,
///   s' = -2 G s - 2 [(u' + G u) u + (w' + 2 Gamma (1 + w + 2 nbar w)) w],
/// G the transverse rate. Returns v = +sqrt(s) on the grid. Throws
/// SingularityError (ConsistentV) at the first time s drops below kVMin^2.
std::vector<double> solve_consistent_v_open(const TrajectorySpec& spec,
                                            const DecoherenceRates& rates,
                                            double v0, const TimeGrid& grid,
                                            const ConsistentVOptions& opts = {});

}  // namespace revpulse
