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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "revpulse/decoherence.hpp"
#include "revpulse/dynamics.hpp"
#include "revpulse/trajectory.hpp"

namespace revpulse {

/// Transition frequency profile over the scenario window, rad/ps.
struct Omega0Spec {
  enum class Kind { Constant, Linear };
  Kind kind = Kind::Constant;
  double start = 0.0;  // value at window start (the constant value for Constant)
  double end = 0.0;    // value at window end (ignored for Constant)

  double at(double t_ps, double window_start, double window_end) const;

  friend bool operator==(const Omega0Spec&, const Omega0Spec&) = default;
};

struct WindowSpec {
  double start = 0.0;  // ps
  double end = 0.0;    // ps
  std::size_t samples = 0;
  /// "artifact-default" for windows chosen by the preset author,
  /// "user" otherwise.
  std::string source = "user";

  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

/// Simulations a scenario can request.
enum class PictureKind {
  EffectiveBloch,  // damped Bloch equations, real Omega
  Lindblad,        // master equation, effective coupling
  LindbladFull,    // master equation, full counter-rotating coupling
  Interaction,     // closed, full coupling
  Rwa,             // closed, rotating-wave coupling
  Lab,             // closed, lab frame
};

std::string_view picture_kind_name(PictureKind k);
PictureKind picture_kind_from_name(std::string_view name);
/// True for pictures driven by the physical carrier Omega_R cos(phi).
bool needs_carrier(PictureKind k);

enum class SvgKind { Pulse, Populations, Bloch3d };
std::string_view svg_kind_name(SvgKind k);
SvgKind svg_kind_from_name(std::string_view name);

struct ScenarioConfig {
  std::string name;
  TrajectorySpec trajectory;
  DecoherenceRates rates;
  Omega0Spec omega0;
  WindowSpec window;
  IntegratorOptions integrator;
  std::vector<PictureKind> pictures;
  bool allow_singular_carrier = false;
  std::string out_dir = ".";
  std::vector<SvgKind> svg;

  TimeGrid grid() const;
  std::vector<double> omega0_samples(const TimeGrid& grid) const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Checks every invariant; throws ValidationError naming the field.
void validate(const ScenarioConfig& cfg);

/// Parses the JSON scenario format (see docs/scenario-format.md). Throws
/// ParseError with line/column for malformed JSON and with a JSON pointer for
/// missing or mistyped keys; ValidationError for unit and invariant failures.
ScenarioConfig parse_scenario(std::string_view json_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Canonical JSON (internal units, fixed key order). parse_scenario inverts it
/// exactly.
std::string serialize_scenario(const ScenarioConfig& cfg);

/// 16 hex digits of FNV-1a over the canonical serialization, ignoring the
/// output block (directory and SVG selection).
std::string scenario_hash(const ScenarioConfig& cfg);

std::vector<std::string> preset_names();
/// Throws ValidationError for unknown names.
ScenarioConfig preset(std::string_view name);

}  // namespace revpulse
