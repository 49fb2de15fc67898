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

#include <optional>
#include <string>
#include <vector>

#include "revpulse/dynamics.hpp"
#include "revpulse/reverse_engineer.hpp"
#include "revpulse/scenario.hpp"
#include "revpulse/verify.hpp"

namespace revpulse {

struct PictureResult {
  PictureKind kind = PictureKind::EffectiveBloch;
  /// Raw integrator output. Lab results stay in the lab frame here.
  SimResult sim;
  /// Tracking against the prescribed trajectory, evaluated in the frame where
  /// the prescription lives (lab results are rotated by U_phi first).
  TrackingReport tracking;
  /// Simulated Bloch vectors in that same frame.
  std::vector<BlochVector> tracked_bloch;
};

struct BundleMetadata {
  std::string spec_hash;
  std::string tool_version;
  double wall_time_s = 0.0;
};

struct ResultBundle {
  ScenarioConfig config;
  PulseSynthesis pulse;
  std::vector<PictureResult> pictures;
  BundleMetadata metadata;

  const PictureResult* find(PictureKind kind) const;
};

/// Synthesizes the pulse for `cfg` without simulating it. Carrier
/// singularities are flagged on the returned field, never thrown.
PulseSynthesis synthesize(const ScenarioConfig& cfg);

/// Full pipeline: synthesis, one integration per requested picture, tracking
/// reports. Pictures that drive the physical carrier are refused for an
/// unrealizable pulse unless cfg.allow_singular_carrier is set. Deterministic
/// in everything except metadata.wall_time_s.
ResultBundle run_scenario(const ScenarioConfig& cfg);

/// Integrates a single picture for an already synthesized pulse.
PictureResult run_picture(const ScenarioConfig& cfg, const PulseSynthesis& pulse,
                          PictureKind kind);

}  // namespace revpulse
