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

#include "revpulse/runner.hpp"

#include <chrono>

#include <fmt/format.h>

#include "revpulse/error.hpp"
#include "revpulse/version.hpp"

namespace revpulse {

namespace {

// Re-raises the active exception with the scenario name prepended, keeping
// its type so callers can still map it to an exit code.
[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const SingularityError& e) {
    throw SingularityError(e.kind(), e.time_ps(), context + e.what());
  } catch (const IntegrationError& e) {
    throw IntegrationError(context + e.what(), e.time_ps());
  } catch (const NumericalError& e) {
    throw NumericalError(context + e.what());
  } catch (const ParseError& e) {
    throw ParseError(context + e.what(), e.pointer(), e.line(), e.column());
  } catch (const ValidationError& e) {
    throw ValidationError(context + e.what());
  }
}

}  // namespace

std::string_view version() { return REVPULSE_VERSION_STRING; }

const PictureResult* ResultBundle::find(PictureKind kind) const {
  for (const PictureResult& p : pictures) {
    if (p.kind == kind) return &p;
  }
  return nullptr;
}

PulseSynthesis synthesize(const ScenarioConfig& cfg) {
  const std::string ctx = fmt::format("scenario '{}': ", cfg.name);
  try {
    validate(cfg);
    const TimeGrid grid = cfg.grid();
    SynthesisOptions opts;
    opts.carrier = CarrierPolicy::Flag;
    return synthesize_pulse(cfg.trajectory, cfg.rates, cfg.omega0_samples(grid), grid,
                            opts);
  } catch (const Error&) {
    rethrow_with_context(ctx);
  }
}

PictureResult run_picture(const ScenarioConfig& cfg, const PulseSynthesis& pulse,
                          PictureKind kind) {
  const ControlField& field = pulse.field;
  const TimeGrid& grid = field.grid();
  if (needs_carrier(kind) && !field.realizable() && !cfg.allow_singular_carrier) {
    const auto times = field.carrier_singularities();
    throw SingularityError(
        SingularityError::Kind::Carrier, times.front(),
        fmt::format("picture '{}' needs the physical carrier, but 1+cos(2 phi) < {} at "
                    "{} samples (first at t = {} ps); set allow_singular_carrier to "
                    "integrate the raw pulse anyway",
                    picture_kind_name(kind), kDenomMin, times.size(), times.front()));
  }
  if ((kind == PictureKind::Interaction || kind == PictureKind::Rwa ||
       kind == PictureKind::Lab) &&
      !cfg.rates.is_closed()) {
    throw ValidationError(fmt::format(
        "picture '{}' is unitary; use 'lindblad' or 'lindblad-full' when rates are "
        "non-zero",
        picture_kind_name(kind)));
  }

  const BlochVector r0 = pulse.target.points.front();
  const DensityMatrix2 rho0 = density_from_bloch(r0);
  auto simulate = [&]() -> SimResult {
    switch (kind) {
      case PictureKind::EffectiveBloch:
        return integrate_bloch_effective(field, cfg.rates, r0, grid, cfg.integrator);
      case PictureKind::Lindblad:
        return integrate_lindblad(field, cfg.rates, rho0, grid, Coupling::Effective,
                                  cfg.integrator);
      case PictureKind::LindbladFull:
        return integrate_lindblad(field, cfg.rates, rho0, grid, Coupling::Full,
                                  cfg.integrator);
      case PictureKind::Interaction:
        return integrate_interaction(field, rho0, grid, cfg.integrator, Coupling::Full);
      case PictureKind::Rwa:
        return integrate_interaction(field, rho0, grid, cfg.integrator, Coupling::Rwa);
      case PictureKind::Lab:
        // The prescription lives in the rotating frame; start the lab run from
        // the same physical state.
        return integrate_lab(
            field, frame_transform(rho0, field.phi().front(), FrameDirection::ToLab), grid,
            cfg.integrator);
    }
    throw ValidationError("unhandled picture kind");
  };
  PictureResult out{kind, simulate(), {}, {}};
  if (kind == PictureKind::Lab) {
    const SimResult rotated = to_interaction_frame(out.sim, field);
    out.tracking = tracking_error(pulse.target, rotated);
    out.tracked_bloch = rotated.bloch;
  } else {
    out.tracking = tracking_error(pulse.target, out.sim);
    out.tracked_bloch = out.sim.bloch;
  }
  out.tracking.strong_coupling_ratio = field.strong_coupling_ratio();
  return out;
}

ResultBundle run_scenario(const ScenarioConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string ctx = fmt::format("scenario '{}': ", cfg.name);
  ResultBundle bundle{cfg, synthesize(cfg), {}, {}};
  for (PictureKind kind : cfg.pictures) {
    try {
      bundle.pictures.push_back(run_picture(cfg, bundle.pulse, kind));
    } catch (const Error&) {
      rethrow_with_context(ctx);
    }
  }
  bundle.metadata.spec_hash = scenario_hash(cfg);
  bundle.metadata.tool_version = std::string(version());
  bundle.metadata.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return bundle;
}

}  // namespace revpulse
