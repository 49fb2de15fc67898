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

#include <memory>
#include <string>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "revpulse/control_field.hpp"
#include "revpulse/decoherence.hpp"
#include "revpulse/quantum_core.hpp"
#include "revpulse/spline.hpp"

namespace revpulse {

/// All channels of a ControlField at one instant.
struct ControlSample {
  double rabi = 0.0;      // Omega_R
  double phi = 0.0;       // carrier phase
  double phi_rate = 0.0;  // d phi / dt of the interpolant
  double omega = 0.0;     // effective coupling
  double delta = 0.0;     // detuning channel
  double omega0 = 0.0;
};

/// Cubic-spline view of a ControlField; exact at the samples.
class ControlInterpolant {
 public:
  explicit ControlInterpolant(const ControlField& field);

  /// Throws ValidationError outside the field's grid span.
  ControlSample operator()(double t_ps) const;
  double front() const { return phi_.front(); }
  double back() const { return phi_.back(); }
  /// Sample times of the underlying field.
  std::span<const double> knots() const { return knots_; }

 private:
  std::vector<double> knots_;
  CubicSpline rabi_, phi_, omega_, delta_, omega0_;
};

ControlSample interpolate_control(const ControlField& field, double t_ps);

enum class Picture { Lab, Interaction, EffectiveBloch };

/// Which coupling the interaction-picture Hamiltonian carries.
enum class Coupling {
  /// Omega_R (1 + e^{-2 i phi}), counter-rotating term retained.
  Full,
  /// Omega_R only, counter-rotating term dropped.
  Rwa,
  /// The real synthesized Omega with the Delta channel: the model the
  /// reverse engineering inverts exactly.
  Effective,
};

std::string picture_name(Picture p);
std::string coupling_name(Coupling c);

/// Time-dependent two-level Hamiltonian in the (|e>, |g>) basis.
///
///   Lab:               1/2 w0 sz + Omega_R cos(phi) sx
///   Interaction/Full:  1/2 [D sz + Re(Oc) sx + Im(Oc) sy],
///                      Oc = Omega_R (1 + e^{-2 i phi}), D = w0 - phi'
///   Interaction/Rwa:   1/2 [D sz + Omega_R sx]
///   Interaction/Effective: 1/2 [Delta sz + Omega sx]
///
/// The full interaction form is U^dag (H_lab - phi' sz / 2) U with
/// U = exp(-i phi sz / 2), evaluated on the same interpolant.
class HamiltonianModel {
 public:
  HamiltonianModel(std::shared_ptr<const ControlInterpolant> control,
                   Picture picture, Coupling coupling = Coupling::Full);

  Eigen::Matrix2cd operator()(double t_ps) const;

  /// Step bound resolving the carrier: phase_per_step / max(w0, |phi'|) for
  /// pictures that carry the e^{i phi} oscillation, +inf otherwise.
  double max_step(double t_ps, double phase_per_step) const;

  Picture picture() const { return picture_; }
  Coupling coupling() const { return coupling_; }
  const ControlInterpolant& control() const { return *control_; }

 private:
  std::shared_ptr<const ControlInterpolant> control_;
  Picture picture_;
  Coupling coupling_;
};

/// Generator of the master equation
///   rho' = -i [H, rho] + (gamma / 2) D_de[rho] + Gamma D_th[rho].
class DensityModel {
 public:
  DensityModel(HamiltonianModel hamiltonian, DecoherenceRates rates);

  Eigen::Matrix2cd rhs(double t_ps, const Eigen::Matrix2cd& rho) const;
  const HamiltonianModel& hamiltonian() const { return h_; }
  const DecoherenceRates& rates() const { return rates_; }

 private:
  HamiltonianModel h_;
  DecoherenceRates rates_;
};

/// Dissipator (gamma / 2) D_de + Gamma D_th applied to rho.
Eigen::Matrix2cd dissipator(const DecoherenceRates& rates,
                            const Eigen::Matrix2cd& rho);

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  /// Carrier phase allowed per step, rad.
  double phase_per_step = 0.1;
  std::size_t max_steps = 20'000'000;
  /// Eigenvalues below this count as positivity warnings.
  double positivity_floor = -1e-8;

  friend bool operator==(const IntegratorOptions&, const IntegratorOptions&) = default;
};

struct IntegratorStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
  double max_error_estimate = 0.0;
  std::size_t positivity_warnings = 0;
  double min_eigenvalue = 1.0;
};

struct SimResult {
  TimeGrid grid;
  std::vector<DensityMatrix2> states;
  std::vector<BlochVector> bloch;
  Picture picture = Picture::Interaction;
  /// Model label: "lab", "interaction", "rwa", "lindblad", "effective-bloch".
  std::string model;
  IntegratorStats stats;
};

/// Integrates any master-equation model from rho0 at grid.front(). States are
/// symmetrized after every step; positivity is monitored, never projected.
SimResult integrate_density(const DensityModel& model, const DensityMatrix2& rho0,
                            const TimeGrid& grid, const IntegratorOptions& opts,
                            std::string label);

/// Closed evolution under the lab-frame Hamiltonian; rho0 in the lab frame.
SimResult integrate_lab(const ControlField& field, const DensityMatrix2& rho0,
                        const TimeGrid& grid, const IntegratorOptions& opts = {});

/// Closed evolution in the field-adapted interaction picture.
SimResult integrate_interaction(const ControlField& field,
                                const DensityMatrix2& rho0, const TimeGrid& grid,
                                const IntegratorOptions& opts = {},
                                Coupling coupling = Coupling::Full);

/// Master equation in the interaction picture with the chosen coupling.
SimResult integrate_lindblad(const ControlField& field,
                             const DecoherenceRates& rates,
                             const DensityMatrix2& rho0, const TimeGrid& grid,
                             Coupling coupling,
                             const IntegratorOptions& opts = {});

/// Damped optical Bloch equations with the synthesized real Omega, Delta:
///   u' = Delta v - G u
///   v' = -Delta u - Omega w - G v
///   w' = Omega v - 2 Gamma (1 + w + 2 nbar w)
SimResult integrate_bloch_effective(const ControlField& field,
                                    const DecoherenceRates& rates,
                                    const BlochVector& r0, const TimeGrid& grid,
                                    const IntegratorOptions& opts = {});

enum class FrameDirection {
  /// rho_I = U^dag rho_lab U, U = exp(-i phi sz / 2).
  ToInteraction,
  ToLab,
};

DensityMatrix2 frame_transform(const DensityMatrix2& rho, double phi,
                               FrameDirection direction);

/// Maps a lab-frame result into the interaction picture node by node.
SimResult to_interaction_frame(const SimResult& lab, const ControlField& field);

}  // namespace revpulse
