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

// Command line front end: scenario synthesis, simulation, verification and
// figure presets.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <ranges>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "revpulse/error.hpp"
#include "revpulse/export.hpp"
#include "revpulse/runner.hpp"
#include "revpulse/scenario.hpp"
#include "revpulse/verify.hpp"
#include "revpulse/version.hpp"

namespace fs = std::filesystem;
using namespace revpulse;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::string out_dir;
  std::optional<double> tol;
  std::string pictures;
  std::string svg;
  bool allow_singular = false;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void apply(const Overrides& o, ScenarioConfig& cfg) {
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (o.tol) {
    cfg.integrator.rtol = *o.tol;
    cfg.integrator.atol = *o.tol;
  }
  if (!o.pictures.empty()) {
    cfg.pictures.clear();
    for (const auto& name : split_list(o.pictures)) {
      cfg.pictures.push_back(picture_kind_from_name(name));
    }
  }
  if (!o.svg.empty()) {
    cfg.svg.clear();
    if (o.svg != "none") {
      for (const auto& name : split_list(o.svg)) cfg.svg.push_back(svg_kind_from_name(name));
    }
  }
  if (o.allow_singular) cfg.allow_singular_carrier = true;
  validate(cfg);
}

std::string report_json(const ResultBundle& b) {
  nlohmann::ordered_json j;
  j["scenario"] = b.config.name;
  j["spec_hash"] = b.metadata.spec_hash;
  j["tool_version"] = b.metadata.tool_version;
  j["wall_time_s"] = b.metadata.wall_time_s;
  const ControlField& f = b.pulse.field;
  j["strong_coupling_ratio"] = f.strong_coupling_ratio();
  j["strong_coupling_ratio_regular"] = f.strong_coupling_ratio_regular();
  j["carrier_singular_samples"] = f.carrier_singularities().size();
  nlohmann::ordered_json pics = nlohmann::ordered_json::array();
  for (const PictureResult& p : b.pictures) {
    nlohmann::ordered_json pj;
    pj["picture"] = std::string(picture_kind_name(p.kind));
    pj["sup"] = {{"u", p.tracking.sup.u}, {"v", p.tracking.sup.v}, {"w", p.tracking.sup.w}};
    pj["rms"] = {{"u", p.tracking.rms.u}, {"v", p.tracking.rms.v}, {"w", p.tracking.rms.w}};
    pj["max_deviation_time_ps"] = p.tracking.max_deviation_time;
    pj["final_fidelity"] = p.tracking.final_fidelity;
    const Hygiene h = hygiene(p.sim);
    pj["hygiene"] = {{"trace_defect", h.trace_defect},
                     {"hermiticity_defect", h.hermiticity_defect},
                     {"purity_defect", h.purity_defect},
                     {"max_bloch_norm", h.max_bloch_norm}};
    pj["stats"] = {{"steps", p.sim.stats.steps},
                   {"rejected", p.sim.stats.rejected},
                   {"rhs_evaluations", p.sim.stats.rhs_evaluations},
                   {"max_error_estimate", p.sim.stats.max_error_estimate},
                   {"positivity_warnings", p.sim.stats.positivity_warnings}};
    pics.push_back(pj);
  }
  j["pictures"] = pics;
  return j.dump(2) + "\n";
}

// Writes <name>.csv, <name>_report.json and one SVG per requested kind.
void write_outputs(const ResultBundle& b) {
  const fs::path dir = b.config.out_dir;
  const std::string& name = b.config.name;
  export_csv(b, dir / (name + ".csv"));
  std::ofstream(dir / (name + "_report.json"), std::ios::binary) << report_json(b);
  for (SvgKind k : b.config.svg) {
    export_svg(b, dir / fmt::format("{}_{}.svg", name, svg_kind_name(k)), k);
  }
}

std::string pulse_csv(const PulseSynthesis& p) {
  const ControlField& f = p.field;
  std::string s = "# revpulse-pulse-csv v1\nt_ps,omega,delta,phi,omega_R,omega0,u,v,w\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const BlochVector& r = p.target.points[i];
    s += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                     f.grid()[i], f.omega()[i], f.delta()[i], f.phi()[i], f.rabi()[i],
                     f.omega0()[i], r.u, r.v, r.w);
  }
  return s;
}

// Runs `body` and maps library exceptions onto exit codes.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    if (!e.pointer().empty()) fmt::print(stderr, "  at {}\n", e.pointer());
    return kExitValidation;
  } catch (const ValidationError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const NumericalError& e) {
    fmt::print(stderr, "numerical failure: {}\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitFailure;
  }
}

int cmd_synthesize(const std::string& config, const Overrides& o) {
  ScenarioConfig cfg = load_scenario(config);
  apply(o, cfg);
  const PulseSynthesis pulse = synthesize(cfg);
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);
  std::ofstream(dir / (cfg.name + "_pulse.csv"), std::ios::binary) << pulse_csv(pulse);
  const ControlField& f = pulse.field;
  fmt::print("{}: {} samples, |Omega_R|max/max(omega0) = {:.4g} (regular samples {:.4g})\n",
             cfg.name, f.size(), f.strong_coupling_ratio(), f.strong_coupling_ratio_regular());
  if (!f.realizable()) {
    fmt::print("warning: 1+cos(2 phi) < {} at {} samples, first at t = {} ps; the carrier "
               "is not realizable there\n",
               kDenomMin, f.carrier_singularities().size(), f.carrier_singularities().front());
  }
  fmt::print("wrote {}\n", (dir / (cfg.name + "_pulse.csv")).string());
  return kExitOk;
}

int cmd_simulate(const std::string& config, const Overrides& o) {
  ScenarioConfig cfg = load_scenario(config);
  apply(o, cfg);
  const ResultBundle b = run_scenario(cfg);
  write_outputs(b);
  fmt::print("{}", summary_text(b));
  return kExitOk;
}

int cmd_verify(const std::string& config, const Overrides& o, double threshold, bool rwa) {
  ScenarioConfig cfg = load_scenario(config);
  apply(o, cfg);
  const ResultBundle b = run_scenario(cfg);
  fmt::print("{}", summary_text(b));
  bool ok = true;
  for (const PictureResult& p : b.pictures) {
    const double err = p.tracking.sup.max();
    const bool pass = err <= threshold;
    ok = ok && pass;
    fmt::print("{} tracking {:<16} sup {:.3e} <= {:.1e}\n", pass ? "PASS" : "FAIL",
               picture_kind_name(p.kind), err, threshold);
  }
  if (rwa) {
    if (!cfg.rates.is_closed()) {
      throw ValidationError("--rwa needs a closed scenario (all rates zero)");
    }
    if (!b.pulse.field.realizable() && !cfg.allow_singular_carrier) {
      throw SingularityError(SingularityError::Kind::Carrier,
                             b.pulse.field.carrier_singularities().front(),
                             "--rwa integrates the physical carrier, which is singular for "
                             "this pulse; pass --allow-singular-carrier to proceed");
    }
    const DensityMatrix2 rho0 = density_from_bloch(b.pulse.target.points.front());
    for (double s : {1.0, 0.25, 0.025}) {
      const double d =
          rwa_deviation(b.pulse.field.scaled(s), rho0, b.pulse.field.grid(), cfg.integrator);
      fmt::print("rwa deviation at amplitude x{:<6} {:.4e}\n", s, d);
    }
  }
  return ok ? kExitOk : kExitNumerical;
}

int cmd_preset_list() {
  for (const std::string& name : preset_names()) {
    const ScenarioConfig c = preset(name);
    fmt::print("{:<8} {:<12} window [{}, {}] ps, {} samples, pictures {}\n", name,
               family_name(c.trajectory), c.window.start, c.window.end, c.window.samples,
               fmt::join(c.pictures | std::views::transform(picture_kind_name), ","));
  }
  return kExitOk;
}

int cmd_preset_run(std::vector<std::string> names, bool all, const Overrides& o,
                   unsigned jobs) {
  if (all) names = preset_names();
  if (names.empty()) throw ValidationError("preset run: give a preset name or --all");
  std::vector<ScenarioConfig> configs;
  for (const auto& n : names) {
    ScenarioConfig c = preset(n);
    if (o.out_dir.empty()) c.out_dir = "out";
    apply(o, c);
    configs.push_back(std::move(c));
  }

  // Each scenario is independent and writes only files named after itself.
  std::vector<int> codes(configs.size(), kExitOk);
  std::vector<std::string> logs(configs.size());
  std::atomic<std::size_t> next{0};
  std::mutex print_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      codes[i] = guarded([&] {
        const ResultBundle b = run_scenario(configs[i]);
        write_outputs(b);
        std::lock_guard lock(print_mutex);
        fmt::print("{}  wall {:.2f} s\n", summary_text(b), b.metadata.wall_time_s);
        std::fflush(stdout);
        return kExitOk;
      });
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(configs.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return *std::max_element(codes.begin(), codes.end());
}

int cmd_preset_export(const std::vector<std::string>& names, bool all, const std::string& out) {
  const std::vector<std::string> list = all ? preset_names() : names;
  if (list.empty()) throw ValidationError("preset export: give a preset name or --all");
  for (const auto& n : list) {
    const std::string text = serialize_scenario(preset(n));
    if (out.empty()) {
      fmt::print("{}", text);
    } else {
      fs::create_directories(out);
      std::ofstream(fs::path(out) / (n + ".json"), std::ios::binary) << text;
    }
  }
  return kExitOk;
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--out-dir", o.out_dir, "Directory for CSV, SVG and report files");
  cmd->add_option("--tol", o.tol, "Integrator relative and absolute tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--pictures", o.pictures,
                  "Comma list: effective-bloch,lindblad,lindblad-full,interaction,rwa,lab");
  cmd->add_option("--svg", o.svg, "Comma list: pulse,populations,bloch3d (or none)");
  cmd->add_flag("--allow-singular-carrier", o.allow_singular,
                "Integrate carrier pictures even where 1+cos(2 phi) vanishes");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revpulse: reverse-engineered control pulses for a driven two-level system"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  Overrides o;
  std::string config;
  double threshold = 1e-6;
  bool rwa = false;
  std::vector<std::string> names;
  bool all = false;
  unsigned jobs = 0;
  std::string export_dir;

  auto* synth = app.add_subcommand("synthesize", "Synthesize the control pulse for a scenario");
  synth->add_option("--config", config, "Scenario JSON file")->required();
  add_common(synth, o);

  auto* sim = app.add_subcommand("simulate", "Synthesize and integrate the requested pictures");
  sim->add_option("--config", config, "Scenario JSON file")->required();
  add_common(sim, o);

  auto* ver = app.add_subcommand("verify", "Check tracking of every picture against a bound");
  ver->add_option("--config", config, "Scenario JSON file")->required();
  ver->add_option("--threshold", threshold, "Sup-norm tracking bound (default 1e-6)");
  ver->add_flag("--rwa", rwa, "Also report RWA deviation at amplitude scalings 1, 1/4, 1/40");
  add_common(ver, o);

  auto* pre = app.add_subcommand("preset", "Built-in presets");
  pre->require_subcommand(1);
  auto* pre_list = pre->add_subcommand("list", "List presets");
  auto* pre_run = pre->add_subcommand("run", "Run presets and write their outputs");
  pre_run->add_option("names", names, "Preset names");
  pre_run->add_flag("--all", all, "Run every preset");
  pre_run->add_option("-j,--jobs", jobs, "Parallel workers (default: hardware threads)");
  add_common(pre_run, o);
  auto* pre_export = pre->add_subcommand("export", "Print or write preset scenario files");
  pre_export->add_option("names", names, "Preset names");
  pre_export->add_flag("--all", all, "Export every preset");
  pre_export->add_option("--out-dir", export_dir, "Write <name>.json files here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  return guarded([&] {
    if (*synth) return cmd_synthesize(config, o);
    if (*sim) return cmd_simulate(config, o);
    if (*ver) return cmd_verify(config, o, threshold, rwa);
    if (*pre_list) return cmd_preset_list();
    if (*pre_run) return cmd_preset_run(names, all, o, jobs);
    if (*pre_export) return cmd_preset_export(names, all, export_dir);
    return kExitValidation;
  });
}
