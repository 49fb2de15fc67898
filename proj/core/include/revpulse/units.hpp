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

#include <string_view>

namespace revpulse {

/// Physical dimension of a scenario quantity. Internal units: ps for time,
/// rad/ps (equivalently ps^-1) for rates and angular frequencies, ps^-2 for
/// chirp and decay coefficients.
enum class Dimension { Time, Frequency, FrequencySquared };

std::string_view dimension_name(Dimension d);

/// Unit string written by the serializer for each dimension (factor 1).
std::string_view canonical_unit(Dimension d);

/// Converts `value` given in `unit` to internal units.
///
/// Frequencies: "rad/ps", "ps^-1", "THz", "GHz", "MHz", "rad/ns", "ns^-1",
/// "rad/s", "s^-1". A "GHz" is 1e9 rad/s: frequency values are angular
/// throughout and no factor 2 pi is applied.
/// Times: "fs", "ps", "ns", "us", "s". Squared frequencies: "ps^-2",
/// "ns^-2", "s^-2".
///
/// Throws ValidationError for unknown units or a unit of the wrong dimension.
double to_internal(double value, std::string_view unit, Dimension expected);

}  // namespace revpulse
