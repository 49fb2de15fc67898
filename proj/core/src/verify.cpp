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

#include "revpulse/verify.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "revpulse/error.hpp"

namespace revpulse {

namespace {

using Mat = Eigen::Matrix2cd;

SampledTrajectory as_trajectory(const SimResult& sim) {
  return {sim.grid, sim.bloch};
}

}  // namespace

double ComponentErrors::max() const { return std::max({u, v, w}); }

TrackingReport tracking_error(const SampledTrajectory& prescribed,
                              const SampledTrajectory& simulated) {
  if (!(prescribed.grid == simulated.grid) ||
      prescribed.points.size() != prescribed.grid.size() ||
      simulated.points.size() != simulated.grid.size()) {
    throw ValidationError(fmt::format(
        "tracking_error needs congruent grids ({} vs {} samples)",
        prescribed.points.size(), simulated.points.size()));
  }
  TrackingReport rep;
  double worst = -1.0;
  const std::size_t n = prescribed.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const BlochVector& p = prescribed.points[i];
    const BlochVector& s = simulated.points[i];
    const double du = std::abs(p.u - s.u);
    const double dv = std::abs(p.v - s.v);
    const double dw = std::abs(p.w - s.w);
    rep.sup.u = std::max(rep.sup.u, du);
    rep.sup.v = std::max(rep.sup.v, dv);
    rep.sup.w = std::max(rep.sup.w, dw);
    rep.rms.u += du * du;
    rep.rms.v += dv * dv;
    rep.rms.w += dw * dw;
    const double local = std::max({du, dv, dw});
    if (local > worst) {
      worst = local;
      rep.max_deviation_time = prescribed.grid[i];
    }
  }
  rep.rms.u = std::sqrt(rep.rms.u / static_cast<double>(n));
  rep.rms.v = std::sqrt(rep.rms.v / static_cast<double>(n));
  rep.rms.w = std::sqrt(rep.rms.w / static_cast<double>(n));
  rep.final_fidelity =
      fidelity(density_from_bloch_unchecked(prescribed.points.back()),
               density_from_bloch_unchecked(simulated.points.back()));
  return rep;
}

TrackingReport tracking_error(const SampledTrajectory& prescribed,
                              const SimResult& simulated) {
  return tracking_error(prescribed, as_trajectory(simulated));
}

double rwa_deviation(const ControlField& field, const DensityMatrix2& rho0,
                     const TimeGrid& grid, const IntegratorOptions& opts) {
  const SimResult full = integrate_interaction(field, rho0, grid, opts, Coupling::Full);
  const SimResult rwa = integrate_interaction(field, rho0, grid, opts, Coupling::Rwa);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, trace_distance(full.states[i], rwa.states[i]));
  }
  return worst;
}

GeneratorOracle generator_oracle(const DecoherenceRates& rates) {
  rates.validate();
  const cplx i(0.0, 1.0);
  Mat id, sx, sy, sz, sp, sm;
  id << 1, 0, 0, 1;
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  sp = 0.5 * (sx + i * sy);
  sm = 0.5 * (sx - i * sy);

  // Bloch-frame axes: u <-> -sx, v <-> sy, w <-> sz.
  const Mat axes[3] = {-sx, sy, sz};

  auto generator = [&](const Mat& rho) -> Mat {
    const Mat d_de = sz * rho * sz - rho;
    const Mat d_th =
        rates.nbar * (2.0 * sp * rho * sm - (sm * sp * rho + rho * sm * sp)) +
        (rates.nbar + 1.0) * (2.0 * sm * rho * sp - (sp * sm * rho + rho * sp * sm));
    return 0.5 * rates.dephasing * d_de + rates.thermal * d_th;
  };
  auto readout = [&](const Mat& m) {
    Eigen::Vector3d r;
    for (int k = 0; k < 3; ++k) r(k) = (axes[k] * m).trace().real();
    return r;
  };

  GeneratorOracle out;
  out.offset = readout(generator(0.5 * id));
  for (int k = 0; k < 3; ++k) {
    const Mat rho = 0.5 * (id + axes[k]);
    out.drift.col(k) = readout(generator(rho)) - out.offset;
  }
  out.transverse = -out.drift(0, 0);
  out.longitudinal = -out.drift(2, 2);
  out.w_drive = out.offset(2);
  out.equilibrium_w = out.longitudinal == 0.0 ? 0.0 : out.w_drive / out.longitudinal;
  return out;
}

FdConvergence generator_fd_check(const DensityModel& model,
                                 const DensityMatrix2& rho_start, double t_start,
                                 double t_center, double h,
                                 const IntegratorOptions& opts) {
  if (!(t_center - h > t_start)) {
    throw ValidationError("generator_fd_check needs t_center - h > t_start");
  }
  FdConvergence out;
  std::vector<double> times{t_start};
  for (int k = 0; k < 3; ++k) {
    out.steps[k] = h / std::pow(2.0, k);
  }
  for (int k = 0; k < 3; ++k) times.push_back(t_center - out.steps[k]);
  times.push_back(t_center);
  for (int k = 2; k >= 0; --k) times.push_back(t_center + out.steps[k]);

  const SimResult sim = integrate_density(model, rho_start, TimeGrid(times), opts, "fd");
  // Indices: 0 start, 1..3 = t-h, t-h/2, t-h/4, 4 = t, 5..7 = t+h/4, t+h/2, t+h.
  const Mat center = sim.states[4].matrix();
  const Mat exact = model.rhs(t_center, center);
  for (int k = 0; k < 3; ++k) {
    const Mat plus = sim.states[7 - k].matrix();
    const Mat minus = sim.states[1 + k].matrix();
    const Mat fd = (plus - minus) / (2.0 * out.steps[k]);
    out.errors[k] = (fd - exact).cwiseAbs().maxCoeff();
  }
  double mx = 0.0, my = 0.0;
  for (int k = 0; k < 3; ++k) {
    mx += std::log(out.steps[k]) / 3.0;
    my += std::log(out.errors[k]) / 3.0;
  }
  double sxy = 0.0, sxx = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double dx = std::log(out.steps[k]) - mx;
    sxy += dx * (std::log(out.errors[k]) - my);
    sxx += dx * dx;
  }
  out.slope = sxy / sxx;
  return out;
}

Hygiene hygiene(const SimResult& sim) {
  Hygiene h;
  for (std::size_t i = 0; i < sim.states.size(); ++i) {
    const DensityMatrix2& rho = sim.states[i];
    h.trace_defect = std::max(h.trace_defect, std::abs(rho.trace() - 1.0));
    h.hermiticity_defect = std::max(h.hermiticity_defect, rho.hermiticity_defect());
    h.purity_defect = std::max(h.purity_defect, std::abs(purity(rho) - 1.0));
    h.max_bloch_norm = std::max(h.max_bloch_norm, sim.bloch[i].norm());
  }
  return h;
}

}  // namespace revpulse
