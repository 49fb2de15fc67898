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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "revpulse/error.hpp"
#include "revpulse/verify.hpp"

namespace revpulse {
namespace {

SampledTrajectory constant(const TimeGrid& g, BlochVector r) {
  return {g, std::vector<BlochVector>(g.size(), r)};
}

SampledTrajectory random_path(const TimeGrid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-0.57, 0.57);
  SampledTrajectory s{g, {}};
  for (std::size_t i = 0; i < g.size(); ++i) s.points.push_back({c(rng), c(rng), c(rng)});
  return s;
}

ControlField resonant(const TimeGrid& g, double rabi, double w0) {
  ControlChannels ch;
  for (double t : g.times()) {
    const double phi = w0 * (t - g.front());
    ch.rabi.push_back(rabi);
    ch.phi.push_back(phi);
    ch.omega0.push_back(w0);
    ch.delta.push_back(0.0);
    ch.omega.push_back(rabi * (1.0 + std::cos(2.0 * phi)));
  }
  return ControlField(g, std::move(ch));
}

TEST(TrackingError, IdenticalInputsGiveZero) {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 5);
  const SampledTrajectory a = constant(g, {0.6, 0.0, 0.8});
  const TrackingReport r = tracking_error(a, a);
  EXPECT_EQ(r.sup.max(), 0.0);
  EXPECT_EQ(r.rms.max(), 0.0);
  EXPECT_NEAR(r.final_fidelity, 1.0, 1e-12);
}

TEST(TrackingError, AntipodalStates) {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 5);
  const TrackingReport r = tracking_error(constant(g, {0, 0, 1}), constant(g, {0, 0, -1}));
  EXPECT_EQ(r.sup.w, 2.0);
  EXPECT_EQ(r.sup.u, 0.0);
  EXPECT_EQ(r.rms.w, 2.0);
  EXPECT_NEAR(r.final_fidelity, 0.0, 1e-15);
}

TEST(TrackingError, ReportsTimeOfWorstDeviation) {
  const TimeGrid g = TimeGrid::uniform(0.0, 4.0, 5);
  SampledTrajectory a = constant(g, {0, 0, 0});
  SampledTrajectory b = a;
  b.points[3].v = 0.2;
  b.points[1].u = 0.1;
  EXPECT_EQ(tracking_error(a, b).max_deviation_time, 3.0);
}

TEST(TrackingError, IsAPseudometricOnSupNorm) {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 20);
  std::mt19937_64 rng(47);
  for (int k = 0; k < 100; ++k) {
    const SampledTrajectory a = random_path(g, rng);
    const SampledTrajectory b = random_path(g, rng);
    const SampledTrajectory c = random_path(g, rng);
    const TrackingReport ab = tracking_error(a, b);
    const TrackingReport ba = tracking_error(b, a);
    EXPECT_EQ(ab.sup.u, ba.sup.u);
    EXPECT_EQ(ab.sup.v, ba.sup.v);
    EXPECT_EQ(ab.sup.w, ba.sup.w);
    const TrackingReport bc = tracking_error(b, c);
    const TrackingReport ac = tracking_error(a, c);
    EXPECT_LE(ac.sup.u, ab.sup.u + bc.sup.u + 1e-15);
    EXPECT_LE(ac.sup.v, ab.sup.v + bc.sup.v + 1e-15);
    EXPECT_LE(ac.sup.w, ab.sup.w + bc.sup.w + 1e-15);
    EXPECT_LE(ab.final_fidelity, 1.0 + 1e-9);
    EXPECT_GE(ab.final_fidelity, 0.0);
  }
}

TEST(TrackingError, RejectsMismatchedGrids) {
  const SampledTrajectory a = constant(TimeGrid::uniform(0.0, 1.0, 5), {});
  const SampledTrajectory b = constant(TimeGrid::uniform(0.0, 1.0, 6), {});
  EXPECT_THROW(tracking_error(a, b), ValidationError);
}

TEST(RwaDeviation, ZeroWithoutDrive) {
  const TimeGrid g = TimeGrid::uniform(0.0, 300.0, 31);
  EXPECT_EQ(rwa_deviation(resonant(g, 0.0, 0.05), DensityMatrix2::ground(), g), 0.0);
}

TEST(RwaDeviation, DecreasesWithAmplitudeAndVanishesInWeakCoupling) {
  // Omega_R = omega0 / 2 at full amplitude; at 1/40 the validity condition
  // omega0 / |Omega_R| > 20 holds.
  const double w0 = 0.1;
  const TimeGrid g = TimeGrid::uniform(0.0, 2000.0, 401);
  const ControlField f = resonant(g, 0.5 * w0, w0);
  double previous = INFINITY;
  for (double s : {1.0, 0.25, 0.025}) {
    const double d = rwa_deviation(f.scaled(s), DensityMatrix2::ground(), g);
    EXPECT_LT(d, previous) << "scale " << s;
    previous = d;
  }
  EXPECT_LE(previous, 1e-2);
}

TEST(GeneratorOracle, Examples) {
  const GeneratorOracle zero = generator_oracle({});
  EXPECT_EQ(zero.drift.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(zero.offset.cwiseAbs().maxCoeff(), 0.0);

  const GeneratorOracle amp = generator_oracle({0.0, 0.3, 0.0});
  EXPECT_NEAR(amp.transverse, 0.3, 1e-15);
  EXPECT_NEAR(amp.longitudinal, 0.6, 1e-15);
  EXPECT_NEAR(amp.w_drive, -0.6, 1e-15);  // w' = -2 Gamma (1 + w)
  EXPECT_NEAR(amp.equilibrium_w, -1.0, 1e-15);

  const GeneratorOracle deph = generator_oracle({0.2, 0.0, 0.0});
  EXPECT_NEAR(deph.transverse, 0.2, 1e-15);
  EXPECT_EQ(deph.longitudinal, 0.0);
  EXPECT_EQ(deph.w_drive, 0.0);
}

TEST(GeneratorOracle, MatchesHardCodedCoefficientsForRandomRates) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> rate(0.0, 2.0);
  std::uniform_real_distribution<double> nb(0.0, 5.0);
  for (int k = 0; k < 100; ++k) {
    const DecoherenceRates r{rate(rng), rate(rng), nb(rng)};
    const GeneratorOracle o = generator_oracle(r);
    const DampedBlochCoefficients c = damped_bloch_coefficients(r);
    EXPECT_NEAR(o.transverse, c.transverse, 1e-12);
    EXPECT_NEAR(o.transverse, transverse_rate(r.dephasing, r.thermal, r.nbar), 1e-12);
    EXPECT_NEAR(-o.drift(1, 1), c.transverse, 1e-12);
    EXPECT_NEAR(o.longitudinal, c.longitudinal, 1e-12);
    EXPECT_NEAR(o.w_drive, c.w_drive, 1e-12);
    EXPECT_NEAR(o.equilibrium_w, c.equilibrium_w(), 1e-12);
    // Dissipation alone does not couple the Bloch components.
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) EXPECT_NEAR(o.drift(i, j), 0.0, 1e-14);
      }
    }
    EXPECT_NEAR(o.offset(0), 0.0, 1e-14);
    EXPECT_NEAR(o.offset(1), 0.0, 1e-14);
    // The w damping term of the inversion, at a few w values.
    for (double w : {-1.0, -0.3, 0.0, 0.7}) {
      EXPECT_NEAR(w_damping(r, w), -o.longitudinal * w + o.w_drive, 1e-12);
    }
  }
}

TEST(Hygiene, ReportsDefects) {
  const TimeGrid g = TimeGrid::uniform(0.0, 100.0, 11);
  const SimResult r = integrate_interaction(resonant(g, 0.01, 0.05), DensityMatrix2::ground(), g);
  const Hygiene h = hygiene(r);
  EXPECT_LE(h.trace_defect, 1e-12);
  EXPECT_LE(h.hermiticity_defect, 1e-15);
  EXPECT_LE(h.purity_defect, 1e-9);
  EXPECT_NEAR(h.max_bloch_norm, 1.0, 1e-9);
}

}  // namespace
}  // namespace revpulse
