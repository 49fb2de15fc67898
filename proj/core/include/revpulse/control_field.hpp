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

#include "revpulse/quantum_core.hpp"

namespace revpulse {

/// Smallest admissible 1 + cos(2 phi) when converting the effective coupling
/// into a physical Rabi frequency.
inline constexpr double kDenomMin = 1e-3;

struct ControlChannels {
  std::vector<double> omega;   // effective coupling Omega, rad/ps
  std::vector<double> delta;   // detuning Delta, rad/ps
  std::vector<double> phi;     // carrier phase, rad
  std::vector<double> rabi;    // physical Rabi frequency Omega_R, rad/ps
  std::vector<double> omega0;  // transition frequency, rad/ps

  friend bool operator==(const ControlChannels&, const ControlChannels&) = default;
};

/// Time-sampled control pulse. Immutable after construction.
///
/// `carrier_singularities` lists sample times where 1 + cos(2 phi) < kDenomMin;
/// the Rabi samples there are the raw (divergent) quotients and the pulse is
/// not physically realizable.
class ControlField {
 public:
  ControlField(TimeGrid grid, ControlChannels channels,
               std::vector<double> carrier_singularities = {});

  const TimeGrid& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }

  std::span<const double> omega() const { return ch_.omega; }
  std::span<const double> delta() const { return ch_.delta; }
  std::span<const double> phi() const { return ch_.phi; }
  std::span<const double> rabi() const { return ch_.rabi; }
  std::span<const double> omega0() const { return ch_.omega0; }
  const ControlChannels& channels() const { return ch_; }

  bool realizable() const { return singular_.empty(); }
  std::span<const double> carrier_singularities() const { return singular_; }

  /// max |Omega_R| / max omega0 over every sample.
  double strong_coupling_ratio() const;
  /// Same ratio restricted to samples with 1 + cos(2 phi) >= kDenomMin.
  double strong_coupling_ratio_regular() const;

  /// The same carrier with Omega_R (and hence Omega) multiplied by `factor`.
  ControlField scaled(double factor) const;

  bool operator==(const ControlField&) const = default;

 private:
  TimeGrid grid_;
  ControlChannels ch_;
  std::vector<double> singular_;
};

}  // namespace revpulse
