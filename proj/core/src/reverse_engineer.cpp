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

#include "revpulse/reverse_engineer.hpp"

#include <cmath>

#include <fmt/format.h>

#include "revpulse/error.hpp"
#include "revpulse/spline.hpp"

namespace revpulse {

OmegaDelta omega_delta_from_traj(double u, double v, double w, double du_dt,
                                 double dw_dt, const DecoherenceRates& rates,
                                 double t_ps) {
  if (!(std::abs(v) >= kVMin)) {
    throw SingularityError(
        SingularityError::Kind::Prescription, t_ps,
        fmt::format("|v| = {:.3e} < v_min at t = {} ps: inversion is singular",
                    std::abs(v), t_ps));
  }
  return {(dw_dt - w_damping(rates, w)) / v,
          (rates.transverse() * u + du_dt) / v};
}

std::vector<double> phase_from_detuning(std::span<const double> omega0,
                                        std::span<const double> delta,
                                        const TimeGrid& grid) {
  if (omega0.size() != grid.size() || delta.size() != grid.size()) {
    throw ValidationError(fmt::format(
        "phase integrand has {} / {} samples, grid has {}", omega0.size(),
        delta.size(), grid.size()));
  }
  std::vector<double> rate(grid.size());
  for (std::size_t i = 0; i < rate.size(); ++i) rate[i] = omega0[i] - delta[i];
  return CubicSpline(grid.times(), rate).cumulative_integral();
}

double rabi_from_omega_phase(double omega, double phi, double t_ps) {
  const double denom = 1.0 + std::cos(2.0 * phi);
  if (!(denom >= kDenomMin)) {
    throw SingularityError(
        SingularityError::Kind::Carrier, t_ps,
        fmt::format("1 + cos(2 phi) = {:.3e} < {} at t = {} ps (phi = {:.6f} "
                    "rad): the pulse is unrealizable there",
                    denom, kDenomMin, t_ps, phi));
  }
  return omega / denom;
}

PulseSynthesis synthesize_pulse(const TrajectorySpec& spec,
                                const DecoherenceRates& rates,
                                std::span<const double> omega0,
                                const TimeGrid& grid,
                                const SynthesisOptions& opts) {
  validate(spec);
  rates.validate();
  const std::size_t n = grid.size();
  if (omega0.size() != n) {
    throw ValidationError(fmt::format(
        "omega0 has {} samples, grid has {}", omega0.size(), n));
  }

  std::vector<TrajPoint> points(n);
  for (std::size_t i = 0; i < n; ++i) {
    points[i] = eval_components(spec, grid[i]);
    // Off-sphere check for every sample, open or closed.
    complete_v_closed(points[i], false);
  }

  std::vector<double> v(n);
  if (rates.is_closed()) {
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = complete_v_closed(points[i], false).v;
    }
  } else {
    const double v0 = complete_v_closed(points.front(), false).v;
    v = solve_consistent_v_open(spec, rates, v0, grid, opts.consistent_v);
  }

  ControlChannels ch;
  ch.omega.resize(n);
  ch.delta.resize(n);
  ch.rabi.resize(n);
  ch.omega0.assign(omega0.begin(), omega0.end());
  SampledTrajectory target{grid, std::vector<BlochVector>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const TrajPoint& p = points[i];
    const OmegaDelta od =
        omega_delta_from_traj(p.u, v[i], p.w, p.du_dt, p.dw_dt, rates, p.t);
    ch.omega[i] = od.omega;
    ch.delta[i] = od.delta;
    target.points[i] = {p.u, v[i], p.w};
  }
  ch.phi = phase_from_detuning(ch.omega0, ch.delta, grid);

  std::vector<double> singular;
  for (std::size_t i = 0; i < n; ++i) {
    if (opts.carrier == CarrierPolicy::Throw) {
      ch.rabi[i] = rabi_from_omega_phase(ch.omega[i], ch.phi[i], grid[i]);
      continue;
    }
    const double denom = 1.0 + std::cos(2.0 * ch.phi[i]);
    if (!(denom >= kDenomMin)) singular.push_back(grid[i]);
    ch.rabi[i] = ch.omega[i] / denom;
  }
  return {ControlField(grid, std::move(ch), std::move(singular)), std::move(target)};
}

}  // namespace revpulse
