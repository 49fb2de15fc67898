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

namespace revpulse {

/// Environment rates of the master equation, all in rad/ps.
///
/// `dephasing` multiplies (1/2) D_de[rho] with D_de = sz rho sz - rho and
/// `thermal` multiplies D_th, the thermal amplitude-damping dissipator with
/// mean photon number `nbar`.
struct DecoherenceRates {
  double dephasing = 0.0;  // gamma
  double thermal = 0.0;    // Gamma
  double nbar = 0.0;

  /// Throws ValidationError on negative or non-finite entries.
  void validate() const;

  bool is_closed() const { return dephasing == 0.0 && thermal == 0.0; }

  /// Decay rate of the coherences u and v.
  double transverse() const;

  friend bool operator==(const DecoherenceRates&,
                         const DecoherenceRates&) = default;
};

/// gamma + Gamma (2 nbar + 1).
double transverse_rate(double dephasing, double thermal, double nbar);

/// Dissipative part of the damped Bloch equations,
///   u' = ... - transverse u
///   v' = ... - transverse v
///   w' = ... - longitudinal w + w_drive
/// i.e. longitudinal = 2 Gamma (1 + 2 nbar) and w_drive = -2 Gamma, which is
/// -2 Gamma (1 + w + 2 nbar w) written as an affine map.
struct DampedBlochCoefficients {
  double transverse = 0.0;
  double longitudinal = 0.0;
  double w_drive = 0.0;

  /// Fixed point of the undriven w equation; 0 when longitudinal is 0.
  double equilibrium_w() const {
    return longitudinal == 0.0 ? 0.0 : w_drive / longitudinal;
  }
};

DampedBlochCoefficients damped_bloch_coefficients(const DecoherenceRates& rates);

/// -2 Gamma (1 + w + 2 nbar w): the dissipative contribution to w'.
double w_damping(const DecoherenceRates& rates, double w);

}  // namespace revpulse
