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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Criterion 9 drives the CLI binary given by --cli.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "revpulse/decoherence.hpp"
#include "revpulse/dynamics.hpp"
#include "revpulse/export.hpp"
#include "revpulse/runner.hpp"
#include "revpulse/scenario.hpp"
#include "revpulse/verify.hpp"

namespace fs = std::filesystem;
using namespace revpulse;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, fmt::format("exception: {}", e.what())};
  }
  if (!o.pass) ++failures;
  fmt::print("{} criterion {}: {}\n", o.pass ? "PASS" : "FAIL", id, o.detail);
  std::fflush(stdout);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool svg_valid(const std::string& svg) {
  const auto last = svg.find_last_not_of(" \n");
  return svg.rfind("<?xml", 0) == 0 && svg.find("<svg") != std::string::npos &&
         last != std::string::npos && last >= 5 && svg.compare(last - 5, 6, "</svg>") == 0 &&
         svg.find("nan") == std::string::npos && svg.find("inf") == std::string::npos;
}

int run_cli(const fs::path& cli, const std::string& args, const fs::path& log) {
  const std::string cmd =
      fmt::format("\"{}\" {} > \"{}\" 2>&1", cli.string(), args, log.string());
  const int raw = std::system(cmd.c_str());
  return raw == -1 ? -1 : WEXITSTATUS(raw);
}

// fig1_L5 pulse as the runner synthesizes it (raw samples kept at
// carrier singularities).
const PulseSynthesis& fig1_l5_pulse() {
  static const PulseSynthesis p = synthesize(preset("fig1_L5"));
  return p;
}

Outcome criterion1() {
  double worst = 0.0;
  double slowest = 0.0;
  for (int level = 1; level <= 5; ++level) {
    ScenarioConfig c = preset(fmt::format("fig1_L{}", level));
    c.pictures = {PictureKind::EffectiveBloch};
    const auto start = Clock::now();
    const ResultBundle b = run_scenario(c);
    slowest = std::max(slowest, seconds_since(start));
    worst = std::max(worst, b.pictures.at(0).tracking.sup.max());
  }
  return {worst <= 1e-6 && slowest <= 5.0,
          fmt::format("fig1_L1..L5 effective-bloch sup error {:.3e} (<= 1e-6), slowest run "
                      "{:.3f} s (<= 5 s)",
                      worst, slowest)};
}

Outcome criterion2() {
  ScenarioConfig c = preset("fig3");
  c.pictures = {PictureKind::Lindblad};
  const ResultBundle b = run_scenario(c);
  const PictureResult& p = b.pictures.at(0);
  const double sup = p.tracking.sup.max();
  const DensityMatrix2& last = p.sim.states.back();
  const double dg = std::abs(last.population_ground() - 0.5);
  const double de = std::abs(last.population_excited() - 0.5);
  return {sup <= 1e-3 && dg <= 0.02 && de <= 0.02,
          fmt::format("fig3 lindblad sup error {:.3e} (<= 1e-3), final P_g={:.4f} "
                      "P_e={:.4f} (within 0.02 of 0.5)",
                      sup, last.population_ground(), last.population_excited())};
}

Outcome criterion3() {
  const PulseSynthesis& p = fig1_l5_pulse();
  const TimeGrid& grid = p.field.grid();
  const DensityMatrix2 rho0 = density_from_bloch(p.target.points.front());
  const SimResult inter = integrate_interaction(p.field, rho0, grid);
  const DensityMatrix2 lab0 =
      frame_transform(rho0, p.field.channels().phi.front(), FrameDirection::ToLab);
  const SimResult lab = to_interaction_frame(integrate_lab(p.field, lab0, grid), p.field);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, trace_distance(lab.states[i], inter.states[i]));
  }
  return {worst <= 1e-6,
          fmt::format("fig1_L5 lab vs interaction max trace distance {:.3e} (<= 1e-6)", worst)};
}

Outcome criterion4() {
  const double gamma_th = 0.002;  // Gamma, rad/ps
  const double gamma_de = 0.003;  // gamma, rad/ps
  const ControlField idle = [] {
    const TimeGrid g = TimeGrid::uniform(0.0, 5.0 / 0.002, 2501);
    ControlChannels ch;
    ch.omega.assign(g.size(), 0.0);
    ch.delta.assign(g.size(), 0.0);
    ch.phi.assign(g.size(), 0.0);
    ch.rabi.assign(g.size(), 0.0);
    ch.omega0.assign(g.size(), 0.0);
    return ControlField(g, std::move(ch));
  }();
  const TimeGrid& g = idle.grid();

  const SimResult amp = integrate_lindblad(idle, {0.0, gamma_th, 0.0}, DensityMatrix2::excited(),
                                           g, Coupling::Effective);
  double amp_err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double exact = -1.0 + 2.0 * std::exp(-2.0 * gamma_th * g[i]);
    amp_err = std::max(amp_err, std::abs(bloch_from_density(amp.states[i]).w - exact));
  }

  const double u0 = 0.8;
  const TimeGrid gd = TimeGrid::uniform(0.0, 5.0 / gamma_de, 2001);
  const SimResult deph = integrate_lindblad(idle, {gamma_de, 0.0, 0.0},
                                            density_from_bloch({u0, 0.0, 0.6}), gd,
                                            Coupling::Effective);
  double deph_err = 0.0;
  for (std::size_t i = 0; i < gd.size(); ++i) {
    const double exact = u0 * std::exp(-gamma_de * gd[i]);
    deph_err = std::max(deph_err, std::abs(bloch_from_density(deph.states[i]).u - exact));
  }
  return {amp_err <= 1e-8 && deph_err <= 1e-8,
          fmt::format("amplitude damping w error {:.3e}, pure dephasing u error {:.3e} over 5 "
                      "decay times (<= 1e-8)",
                      amp_err, deph_err)};
}

Outcome criterion5() {
  std::mt19937_64 rng(20260);
  std::uniform_real_distribution<double> rate(0.0, 0.1);
  std::uniform_real_distribution<double> nb(0.0, 10.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const DecoherenceRates r{rate(rng), rate(rng), nb(rng)};
    const GeneratorOracle o = generator_oracle(r);
    const DampedBlochCoefficients c = damped_bloch_coefficients(r);
    const double gt = r.dephasing + r.thermal * (2.0 * r.nbar + 1.0);
    for (double d : {o.transverse - c.transverse, -o.drift(1, 1) - c.transverse,
                     o.transverse - gt, o.longitudinal - c.longitudinal,
                     o.w_drive - c.w_drive, o.equilibrium_w - c.equilibrium_w()}) {
      worst = std::max(worst, std::abs(d));
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) worst = std::max(worst, std::abs(o.drift(i, j)));
      }
    }
  }
  return {worst <= 1e-12,
          fmt::format("100 random rate triples, max oracle mismatch {:.3e} (<= 1e-12)", worst)};
}

Outcome criterion6() {
  const ControlField& f = fig1_l5_pulse().field;
  const double ratio = f.strong_coupling_ratio();
  const double regular = f.strong_coupling_ratio_regular();
  return {ratio >= 0.1 && ratio <= 10.0,
          fmt::format("fig1_L5 |Omega_R|max / max omega0 = {:.4g} (in [0.1, 10]); {:.4g} "
                      "excluding {} flagged carrier samples",
                      ratio, regular, f.carrier_singularities().size())};
}

Outcome criterion7() {
  const PulseSynthesis& p = fig1_l5_pulse();
  const DensityMatrix2 rho0 = density_from_bloch(p.target.points.front());
  std::vector<double> dev;
  for (double s : {1.0, 0.25, 1.0 / 40.0}) {
    dev.push_back(rwa_deviation(p.field.scaled(s), rho0, p.field.grid()));
  }
  const bool decreasing = dev[0] > dev[1] && dev[1] > dev[2];
  return {decreasing && dev[2] <= 1e-2,
          fmt::format("fig1_L5 rwa deviation at scale 1, 1/4, 1/40: {:.4g}, {:.4g}, {:.4g} "
                      "(strictly decreasing, last <= 1e-2)",
                      dev[0], dev[1], dev[2])};
}

Outcome criterion8() {
  Hygiene worst;
  double worst_purity_closed = 0.0;
  for (const std::string& name : preset_names()) {
    const ResultBundle b = run_scenario(preset(name));
    for (const PictureResult& p : b.pictures) {
      if (p.sim.states.empty()) continue;
      const Hygiene h = hygiene(p.sim);
      worst.trace_defect = std::max(worst.trace_defect, h.trace_defect);
      worst.hermiticity_defect = std::max(worst.hermiticity_defect, h.hermiticity_defect);
      worst.max_bloch_norm = std::max(worst.max_bloch_norm, h.max_bloch_norm);
      if (b.config.rates.is_closed() && p.kind != PictureKind::EffectiveBloch) {
        worst_purity_closed = std::max(worst_purity_closed, h.purity_defect);
      }
    }
  }
  const PulseSynthesis& p = fig1_l5_pulse();
  auto control = std::make_shared<const ControlInterpolant>(p.field);
  const DensityModel model(HamiltonianModel(control, Picture::Interaction, Coupling::Effective),
                           {0.001, 0.0001, 0.0});
  IntegratorOptions tight;
  tight.rtol = tight.atol = 1e-13;
  const FdConvergence fd = generator_fd_check(
      model, density_from_bloch(p.target.points.front()), -600.0, -300.0, 8.0, tight);
  const bool pass = worst.trace_defect <= 1e-10 && worst.hermiticity_defect <= 1e-12 &&
                    worst_purity_closed <= 1e-9 && worst.max_bloch_norm <= 1.0 + 1e-9 &&
                    std::abs(fd.slope - 2.0) <= 0.2;
  return {pass, fmt::format("all presets: trace defect {:.2e} (<= 1e-10), hermiticity {:.2e} "
                            "(<= 1e-12), closed purity defect {:.2e} (<= 1e-9), max |r| "
                            "{:.12f} (<= 1+1e-9); FD slope {:.3f} (2 +- 0.2)",
                            worst.trace_defect, worst.hermiticity_defect, worst_purity_closed,
                            worst.max_bloch_norm, fd.slope)};
}

Outcome criterion9(const fs::path& cli, const fs::path& work) {
  fs::remove_all(work);
  fs::create_directories(work);
  std::string why;

  const fs::path run_a = work / "run_a";
  const fs::path run_b = work / "run_b";
  for (const fs::path& d : {run_a, run_b}) {
    const int rc = run_cli(cli, fmt::format("preset run fig1_L5 --out-dir \"{}\"", d.string()),
                           work / "fig1_L5.log");
    if (rc != 0) why += fmt::format(" preset run fig1_L5 exited {};", rc);
  }
  const bool identical =
      why.empty() && slurp(run_a / "fig1_L5.csv") == slurp(run_b / "fig1_L5.csv");
  if (!identical && why.empty()) why += " CSV differs between runs;";

  const fs::path all = work / "all";
  const auto start = Clock::now();
  const int rc = run_cli(cli, fmt::format("preset run --all --out-dir \"{}\"", all.string()),
                         work / "all.log");
  const double suite_s = seconds_since(start);
  if (rc != 0) why += fmt::format(" preset run --all exited {};", rc);

  std::size_t svgs = 0;
  for (const std::string& name : preset_names()) {
    for (std::string_view kind : {"pulse", "populations", "bloch3d"}) {
      const fs::path f = all / fmt::format("{}_{}.svg", name, kind);
      if (!fs::exists(f) || !svg_valid(slurp(f))) {
        why += fmt::format(" invalid or missing {};", f.filename().string());
      } else {
        ++svgs;
      }
    }
  }
  if (suite_s > 60.0) why += " suite over 60 s;";
  return {why.empty(),
          fmt::format("byte-identical fig1_L5 CSV: {}, {} valid SVGs, preset suite {:.2f} s "
                      "(<= 60 s){}",
                      identical ? "yes" : "no", svgs, suite_s, why)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revpulse acceptance criteria"};
  fs::path cli;
  fs::path work = fs::temp_directory_path() / "revpulse_acceptance";
  app.add_option("--cli", cli, "revpulse executable")->required();
  app.add_option("--work-dir", work, "Scratch directory for CLI outputs");
  CLI11_PARSE(app, argc, argv);

  report(1, criterion1);
  report(2, criterion2);
  report(3, criterion3);
  report(4, criterion4);
  report(5, criterion5);
  report(6, criterion6);
  report(7, criterion7);
  report(8, criterion8);
  report(9, [&] { return criterion9(cli, work); });
  fmt::print("{} of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
