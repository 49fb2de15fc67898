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

#include "revpulse/decoherence.hpp"

#include <cmath>

#include <fmt/format.h>

#include "revpulse/error.hpp"

namespace revpulse {

void DecoherenceRates::validate() const {
  auto check = [](double value, const char* name) {
    if (!std::isfinite(value) || value < 0.0) {
      throw ValidationError(
          fmt::format("rates.{} must be finite and >= 0 (got {})", name, value));
    }
  };
  check(dephasing, "gamma");
  check(thermal, "Gamma");
  check(nbar, "nbar");
}

double DecoherenceRates::transverse() const {
  return transverse_rate(dephasing, thermal, nbar);
}

double transverse_rate(double dephasing, double thermal, double nbar) {
  return dephasing + thermal * (2.0 * nbar + 1.0);
}

DampedBlochCoefficients damped_bloch_coefficients(const DecoherenceRates& rates) {
  return {rates.transverse(), 2.0 * rates.thermal * (1.0 + 2.0 * rates.nbar),
          -2.0 * rates.thermal};
}

double w_damping(const DecoherenceRates& rates, double w) {
  return -2.0 * rates.thermal * (1.0 + w + 2.0 * rates.nbar * w);
}

}  // namespace revpulse
