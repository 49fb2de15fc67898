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

#include "revpulse/units.hpp"

#include <array>
#include <string>

#include <fmt/format.h>

#include "revpulse/error.hpp"

namespace revpulse {

namespace {

struct UnitEntry {
  std::string_view name;
  Dimension dimension;
  double factor;
};

constexpr std::array<UnitEntry, 17> kUnits{{
    {"rad/ps", Dimension::Frequency, 1.0},
    {"ps^-1", Dimension::Frequency, 1.0},
    {"THz", Dimension::Frequency, 1.0},
    {"GHz", Dimension::Frequency, 1e-3},
    {"MHz", Dimension::Frequency, 1e-6},
    {"rad/ns", Dimension::Frequency, 1e-3},
    {"ns^-1", Dimension::Frequency, 1e-3},
    {"rad/s", Dimension::Frequency, 1e-12},
    {"s^-1", Dimension::Frequency, 1e-12},
    {"fs", Dimension::Time, 1e-3},
    {"ps", Dimension::Time, 1.0},
    {"ns", Dimension::Time, 1e3},
    {"us", Dimension::Time, 1e6},
    {"s", Dimension::Time, 1e12},
    {"ps^-2", Dimension::FrequencySquared, 1.0},
    {"ns^-2", Dimension::FrequencySquared, 1e-6},
    {"s^-2", Dimension::FrequencySquared, 1e-24},
}};

}  // namespace

std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::Time:
      return "time";
    case Dimension::Frequency:
      return "frequency";
    case Dimension::FrequencySquared:
      return "squared frequency";
  }
  return "unknown";
}

std::string_view canonical_unit(Dimension d) {
  switch (d) {
    case Dimension::Time:
      return "ps";
    case Dimension::Frequency:
      return "rad/ps";
    case Dimension::FrequencySquared:
      return "ps^-2";
  }
  return "";
}

double to_internal(double value, std::string_view unit, Dimension expected) {
  for (const UnitEntry& e : kUnits) {
    if (e.name != unit) continue;
    if (e.dimension != expected) {
      throw ValidationError(fmt::format("unit '{}' is a {}, expected a {}", unit,
                                        dimension_name(e.dimension),
                                        dimension_name(expected)));
    }
    return value * e.factor;
  }
  throw ValidationError(fmt::format("unknown unit '{}' (expected a {})", unit,
                                    dimension_name(expected)));
}

}  // namespace revpulse
