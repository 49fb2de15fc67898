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

#include "revpulse/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "revpulse/error.hpp"
#include "revpulse/ode.hpp"

namespace revpulse {

namespace {

using Mat = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;

const cplx I(0.0, 1.0);

Mat pauli_x() { return (Mat() << 0.0, 1.0, 1.0, 0.0).finished(); }
Mat pauli_y() { return (Mat() << 0.0, -I, I, 0.0).finished(); }
Mat pauli_z() { return (Mat() << 1.0, 0.0, 0.0, -1.0).finished(); }
Mat raising() { return (Mat() << 0.0, 1.0, 0.0, 0.0).finished(); }
Mat lowering() { return (Mat() << 0.0, 0.0, 1.0, 0.0).finished(); }

void check_output_grid(const ControlField& field, const TimeGrid& grid) {
  if (grid.front() < field.grid().front() || grid.back() > field.grid().back()) {
    throw ValidationError(fmt::format(
        "output grid [{}, {}] ps exceeds the control span [{}, {}] ps",
        grid.front(), grid.back(), field.grid().front(), field.grid().back()));
  }
}

}  // namespace

SimResult integrate_density(const DensityModel& model, const DensityMatrix2& rho0,
                            const TimeGrid& grid, const IntegratorOptions& opts,
                            std::string label) {
  rho0.validate(1e-9);
  SimResult out{grid, std::vector<DensityMatrix2>(grid.size()),
                std::vector<BlochVector>(grid.size()),
                model.hamiltonian().picture(), std::move(label), {}};
  const ode::Options ode_opts{.rtol = opts.rtol,
                              .atol = opts.atol,
                              .initial_step = 0.0,
                              .max_steps = opts.max_steps,
                              .breakpoints = model.hamiltonian().control().knots()};
  IntegratorStats& st = out.stats;
  auto monitor = [&](const Mat& rho) {
    const double lo = DensityMatrix2(rho).min_eigenvalue();
    st.min_eigenvalue = std::min(st.min_eigenvalue, lo);
    if (lo < opts.positivity_floor) ++st.positivity_warnings;
  };
  const ode::Stats s = ode::integrate(
      [&](double t, const Mat& rho) { return model.rhs(t, rho); },
      rho0.matrix(), grid.times(), ode_opts,
      [&](std::size_t i, double, const Mat& rho) {
        const DensityMatrix2 state = DensityMatrix2(rho).symmetrized();
        out.states[i] = state;
        out.bloch[i] = bloch_from_density(state);
      },
      [&](double t) { return model.hamiltonian().max_step(t, opts.phase_per_step); },
      [&](double, Mat& rho) {
        rho = 0.5 * (rho + rho.adjoint()).eval();
        monitor(rho);
        return true;
      });
  st.steps = s.steps;
  st.rejected = s.rejected;
  st.rhs_evaluations = s.rhs_evaluations;
  st.max_error_estimate = s.max_error_estimate;
  return out;
}

ControlInterpolant::ControlInterpolant(const ControlField& field)
    : knots_(field.grid().times().begin(), field.grid().times().end()),
      rabi_(field.grid().times(), field.rabi()),
      phi_(field.grid().times(), field.phi()),
      omega_(field.grid().times(), field.omega()),
      delta_(field.grid().times(), field.delta()),
      omega0_(field.grid().times(), field.omega0()) {}

ControlSample ControlInterpolant::operator()(double t) const {
  return {.rabi = rabi_(t),
          .phi = phi_(t),
          .phi_rate = phi_.derivative(t),
          .omega = omega_(t),
          .delta = delta_(t),
          .omega0 = omega0_(t)};
}

ControlSample interpolate_control(const ControlField& field, double t_ps) {
  return ControlInterpolant(field)(t_ps);
}

std::string picture_name(Picture p) {
  switch (p) {
    case Picture::Lab:
      return "lab";
    case Picture::Interaction:
      return "interaction";
    case Picture::EffectiveBloch:
      return "effective-bloch";
  }
  return "unknown";
}

std::string coupling_name(Coupling c) {
  switch (c) {
    case Coupling::Full:
      return "full";
    case Coupling::Rwa:
      return "rwa";
    case Coupling::Effective:
      return "effective";
  }
  return "unknown";
}

HamiltonianModel::HamiltonianModel(std::shared_ptr<const ControlInterpolant> control,
                                   Picture picture, Coupling coupling)
    : control_(std::move(control)), picture_(picture), coupling_(coupling) {
  if (!control_) throw ValidationError("Hamiltonian needs a control interpolant");
  if (picture_ == Picture::EffectiveBloch) {
    picture_ = Picture::Interaction;
    coupling_ = Coupling::Effective;
  }
}

Mat HamiltonianModel::operator()(double t) const {
  const ControlSample c = (*control_)(t);
  if (picture_ == Picture::Lab) {
    return 0.5 * c.omega0 * pauli_z() + c.rabi * std::cos(c.phi) * pauli_x();
  }
  switch (coupling_) {
    case Coupling::Full: {
      const double detuning = c.omega0 - c.phi_rate;
      const cplx oc = c.rabi * (1.0 + std::exp(-2.0 * I * c.phi));
      return 0.5 * (detuning * pauli_z() + oc.real() * pauli_x() +
                    oc.imag() * pauli_y());
    }
    case Coupling::Rwa: {
      const double detuning = c.omega0 - c.phi_rate;
      return 0.5 * (detuning * pauli_z() + c.rabi * pauli_x());
    }
    case Coupling::Effective:
      return 0.5 * (c.delta * pauli_z() + c.omega * pauli_x());
  }
  return Mat::Zero();
}

double HamiltonianModel::max_step(double t, double phase_per_step) const {
  const bool carrier = picture_ == Picture::Lab || coupling_ == Coupling::Full;
  if (!carrier) return std::numeric_limits<double>::infinity();
  const ControlSample c = (*control_)(t);
  const double rate = std::max(std::abs(c.omega0), std::abs(c.phi_rate));
  return rate > 0.0 ? phase_per_step / rate : std::numeric_limits<double>::infinity();
}

DensityModel::DensityModel(HamiltonianModel hamiltonian, DecoherenceRates rates)
    : h_(std::move(hamiltonian)), rates_(rates) {
  rates_.validate();
}

Mat dissipator(const DecoherenceRates& rates, const Mat& rho) {
  Mat out = Mat::Zero();
  if (rates.dephasing != 0.0) {
    const Mat sz = pauli_z();
    out += 0.5 * rates.dephasing * (sz * rho * sz - rho);
  }
  if (rates.thermal != 0.0) {
    const Mat sp = raising();
    const Mat sm = lowering();
    const Mat up = 2.0 * sp * rho * sm - (sm * sp * rho + rho * sm * sp);
    const Mat down = 2.0 * sm * rho * sp - (sp * sm * rho + rho * sp * sm);
    out += rates.thermal * (rates.nbar * up + (rates.nbar + 1.0) * down);
  }
  return out;
}

Mat DensityModel::rhs(double t, const Mat& rho) const {
  const Mat h = h_(t);
  Mat d = -I * (h * rho - rho * h);
  if (!rates_.is_closed()) d += dissipator(rates_, rho);
  return d;
}

SimResult integrate_lab(const ControlField& field, const DensityMatrix2& rho0,
                        const TimeGrid& grid, const IntegratorOptions& opts) {
  check_output_grid(field, grid);
  auto control = std::make_shared<const ControlInterpolant>(field);
  return integrate_density(DensityModel(HamiltonianModel(control, Picture::Lab), {}),
                     rho0, grid, opts, "lab");
}

SimResult integrate_interaction(const ControlField& field,
                                const DensityMatrix2& rho0, const TimeGrid& grid,
                                const IntegratorOptions& opts, Coupling coupling) {
  check_output_grid(field, grid);
  auto control = std::make_shared<const ControlInterpolant>(field);
  return integrate_density(
      DensityModel(HamiltonianModel(control, Picture::Interaction, coupling), {}),
      rho0, grid, opts, coupling == Coupling::Rwa ? "rwa" : "interaction");
}

SimResult integrate_lindblad(const ControlField& field,
                             const DecoherenceRates& rates,
                             const DensityMatrix2& rho0, const TimeGrid& grid,
                             Coupling coupling, const IntegratorOptions& opts) {
  check_output_grid(field, grid);
  auto control = std::make_shared<const ControlInterpolant>(field);
  return integrate_density(
      DensityModel(HamiltonianModel(control, Picture::Interaction, coupling), rates),
      rho0, grid, opts, "lindblad");
}

SimResult integrate_bloch_effective(const ControlField& field,
                                    const DecoherenceRates& rates,
                                    const BlochVector& r0, const TimeGrid& grid,
                                    const IntegratorOptions& opts) {
  check_output_grid(field, grid);
  rates.validate();
  if (!(r0.norm() <= 1.0 + kPhysicalitySlack)) {
    throw ValidationError(fmt::format(
        "initial Bloch vector has length {:.12g} > 1", r0.norm()));
  }
  const ControlInterpolant control(field);
  const DampedBlochCoefficients k = damped_bloch_coefficients(rates);

  SimResult out{grid, std::vector<DensityMatrix2>(grid.size()),
                std::vector<BlochVector>(grid.size()), Picture::EffectiveBloch,
                "effective-bloch", {}};
  auto rhs = [&](double t, const Vec3& r) {
    const ControlSample c = control(t);
    return Vec3(c.delta * r(1) - k.transverse * r(0),
                -c.delta * r(0) - c.omega * r(2) - k.transverse * r(1),
                c.omega * r(1) - k.longitudinal * r(2) + k.w_drive);
  };
  const ode::Options ode_opts{.rtol = opts.rtol,
                              .atol = opts.atol,
                              .initial_step = 0.0,
                              .max_steps = opts.max_steps,
                              .breakpoints = control.knots()};
  const ode::Stats s = ode::integrate(
      rhs, Vec3(r0.u, r0.v, r0.w), grid.times(), ode_opts,
      [&](std::size_t i, double, const Vec3& r) {
        out.bloch[i] = {r(0), r(1), r(2)};
        out.states[i] = density_from_bloch_unchecked(out.bloch[i]);
        out.stats.min_eigenvalue =
            std::min(out.stats.min_eigenvalue, out.states[i].min_eigenvalue());
      });
  out.stats.steps = s.steps;
  out.stats.rejected = s.rejected;
  out.stats.rhs_evaluations = s.rhs_evaluations;
  out.stats.max_error_estimate = s.max_error_estimate;
  return out;
}

DensityMatrix2 frame_transform(const DensityMatrix2& rho, double phi,
                               FrameDirection direction) {
  const double sign = direction == FrameDirection::ToInteraction ? 1.0 : -1.0;
  Mat m = rho.matrix();
  const cplx phase = std::exp(I * (sign * phi));
  m(0, 1) *= phase;
  m(1, 0) *= std::conj(phase);
  return DensityMatrix2(m);
}

SimResult to_interaction_frame(const SimResult& lab, const ControlField& field) {
  if (lab.picture != Picture::Lab) {
    throw ValidationError("to_interaction_frame expects a lab-frame result");
  }
  const ControlInterpolant control(field);
  SimResult out = lab;
  out.picture = Picture::Interaction;
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    out.states[i] = frame_transform(lab.states[i], control(lab.grid[i]).phi,
                                    FrameDirection::ToInteraction);
    out.bloch[i] = bloch_from_density(out.states[i]);
  }
  return out;
}

}  // namespace revpulse
