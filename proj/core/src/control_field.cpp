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

#include "revpulse/control_field.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "revpulse/error.hpp"

namespace revpulse {

ControlField::ControlField(TimeGrid grid, ControlChannels channels,
                           std::vector<double> carrier_singularities)
    : grid_(std::move(grid)),
      ch_(std::move(channels)),
      singular_(std::move(carrier_singularities)) {
  const std::size_t n = grid_.size();
  for (const auto* c : {&ch_.omega, &ch_.delta, &ch_.phi, &ch_.rabi, &ch_.omega0}) {
    if (c->size() != n) {
      throw ValidationError(fmt::format(
          "control channel has {} samples, grid has {}", c->size(), n));
    }
  }
}

double ControlField::strong_coupling_ratio() const {
  double rabi_max = 0.0;
  for (double r : ch_.rabi) rabi_max = std::max(rabi_max, std::abs(r));
  const double w0_max = *std::max_element(ch_.omega0.begin(), ch_.omega0.end());
  return rabi_max / w0_max;
}

double ControlField::strong_coupling_ratio_regular() const {
  double rabi_max = 0.0;
  for (std::size_t i = 0; i < ch_.rabi.size(); ++i) {
    if (1.0 + std::cos(2.0 * ch_.phi[i]) >= kDenomMin) {
      rabi_max = std::max(rabi_max, std::abs(ch_.rabi[i]));
    }
  }
  const double w0_max = *std::max_element(ch_.omega0.begin(), ch_.omega0.end());
  return rabi_max / w0_max;
}

ControlField ControlField::scaled(double factor) const {
  ControlChannels ch = ch_;
  for (double& x : ch.rabi) x *= factor;
  for (double& x : ch.omega) x *= factor;
  return ControlField(grid_, std::move(ch), singular_);
}

}  // namespace revpulse
