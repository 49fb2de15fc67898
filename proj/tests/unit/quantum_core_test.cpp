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
#include "revpulse/quantum_core.hpp"

namespace revpulse {
namespace {

using Mat = Eigen::Matrix2cd;
const cplx I(0.0, 1.0);

Mat sx() { Mat m; m << 0, 1, 1, 0; return m; }
Mat sy() { Mat m; m << 0, -I, I, 0; return m; }
Mat sz() { Mat m; m << 1, 0, 0, -1; return m; }

DensityMatrix2 projector(const Eigen::Vector2cd& psi) {
  const Eigen::Vector2cd n = psi.normalized();
  return DensityMatrix2(n * n.adjoint());
}

BlochVector random_ball(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u01;
  BlochVector r{g(rng), g(rng), g(rng)};
  const double scale = std::cbrt(u01(rng)) / r.norm();
  return {r.u * scale, r.v * scale, r.w * scale};
}

TEST(BlochFromDensity, GroundStateSitsOnSouthPole) {
  EXPECT_EQ(bloch_from_density(DensityMatrix2::ground()), (BlochVector{0, 0, -1}));
}

TEST(BlochFromDensity, MaximallyMixedIsOrigin) {
  const BlochVector r = bloch_from_density(DensityMatrix2::maximally_mixed());
  EXPECT_EQ(r.norm(), 0.0);
}

TEST(BlochFromDensity, EqualSuperpositionsLieOnTheUAxis) {
  // Basis order (|e>, |g>). With the frame convention in use, the symmetric
  // superposition sits at u = -1 and the antisymmetric one at u = +1.
  const BlochVector plus = bloch_from_density(projector({1.0, 1.0}));
  EXPECT_NEAR(plus.u, -1.0, 1e-15);
  EXPECT_NEAR(plus.v, 0.0, 1e-15);
  EXPECT_NEAR(plus.w, 0.0, 1e-15);
  const BlochVector minus = bloch_from_density(projector({-1.0, 1.0}));
  EXPECT_NEAR(minus.u, 1.0, 1e-15);
}

TEST(BlochFromDensity, MatchesPauliExpectationValues) {
  // <sx> = -u, <sy> = v, <sz> = w, computed with explicit Pauli matrices.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int k = 0; k < 200; ++k) {
    const DensityMatrix2 rho = projector({cplx(g(rng), g(rng)), cplx(g(rng), g(rng))});
    const BlochVector r = bloch_from_density(rho);
    EXPECT_NEAR(-r.u, (rho.matrix() * sx()).trace().real(), 1e-14);
    EXPECT_NEAR(r.v, (rho.matrix() * sy()).trace().real(), 1e-14);
    EXPECT_NEAR(r.w, (rho.matrix() * sz()).trace().real(), 1e-14);
  }
}

TEST(BlochFromDensity, IsLinear) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01;
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix2 a = density_from_bloch(random_ball(rng));
    const DensityMatrix2 b = density_from_bloch(random_ball(rng));
    const double p = u01(rng);
    const BlochVector mix = bloch_from_density(DensityMatrix2(p * a.matrix() + (1 - p) * b.matrix()));
    const BlochVector ra = bloch_from_density(a);
    const BlochVector rb = bloch_from_density(b);
    EXPECT_NEAR(mix.u, p * ra.u + (1 - p) * rb.u, 1e-15);
    EXPECT_NEAR(mix.v, p * ra.v + (1 - p) * rb.v, 1e-15);
    EXPECT_NEAR(mix.w, p * ra.w + (1 - p) * rb.w, 1e-15);
  }
}

TEST(DensityFromBloch, NorthPoleIsExcited) {
  const DensityMatrix2 rho = density_from_bloch({0, 0, 1});
  EXPECT_TRUE(rho.matrix().isApprox(DensityMatrix2::excited().matrix(), 1e-15));
}

TEST(DensityFromBloch, OriginIsMaximallyMixed) {
  const DensityMatrix2 rho = density_from_bloch({0, 0, 0});
  EXPECT_TRUE(rho.matrix().isApprox(Mat::Identity() * 0.5, 1e-15));
}

TEST(DensityFromBloch, UnitVectorGivesPureState) {
  const DensityMatrix2 rho = density_from_bloch({0.6, 0, 0.8});
  EXPECT_NEAR(std::abs(rho.determinant()), 0.0, 1e-12);
  EXPECT_NEAR(purity(rho), 1.0, 1e-12);
}

TEST(DensityFromBloch, RejectsVectorsOutsideTheBall) {
  EXPECT_THROW(density_from_bloch({0.8, 0.0, 0.61}), ValidationError);
  EXPECT_NO_THROW(density_from_bloch({0.0, 0.0, 1.0 + 0.5e-9}));
}

TEST(DensityFromBloch, RoundTripsWithinAlgebraicTolerance) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 1000; ++k) {
    const BlochVector r = random_ball(rng);
    const DensityMatrix2 rho = density_from_bloch(r);
    EXPECT_NO_THROW(rho.validate());
    const DensityMatrix2 back = density_from_bloch(bloch_from_density(rho));
    EXPECT_LE((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Purity, Examples) {
  EXPECT_DOUBLE_EQ(purity(DensityMatrix2::ground()), 1.0);
  EXPECT_DOUBLE_EQ(purity(DensityMatrix2::maximally_mixed()), 0.5);
  EXPECT_NEAR(purity(density_from_bloch({0.6, 0, 0})), 0.68, 1e-15);
}

TEST(Purity, EqualsHalfOnePlusLengthSquared) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 1000; ++k) {
    const BlochVector r = random_ball(rng);
    EXPECT_NEAR(purity(density_from_bloch(r)), 0.5 * (1.0 + r.norm_squared()), 1e-15);
  }
}

TEST(Coherence, Examples) {
  EXPECT_EQ(coherence(DensityMatrix2::ground()), 0.0);
  EXPECT_NEAR(coherence(projector({1.0, 1.0})), 0.5, 1e-15);
  EXPECT_EQ(coherence(DensityMatrix2::maximally_mixed()), 0.0);
}

TEST(Coherence, MatchesPauliDefinition) {
  // |<sx> - i<sy>| / 2
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix2 rho = density_from_bloch(random_ball(rng));
    const cplx ex = (rho.matrix() * sx()).trace();
    const cplx ey = (rho.matrix() * sy()).trace();
    EXPECT_NEAR(coherence(rho), std::abs(ex - I * ey) / 2.0, 1e-15);
  }
}

TEST(DensityMatrix2, ValidateRejectsBrokenInvariants) {
  Mat m = DensityMatrix2::ground().matrix();
  m(0, 1) = 0.1;  // not Hermitian
  EXPECT_THROW(DensityMatrix2(m).validate(), ValidationError);
  Mat t = Mat::Identity();  // trace 2
  EXPECT_THROW(DensityMatrix2(t).validate(), ValidationError);
  Mat neg;
  neg << 1.2, 0, 0, -0.2;  // unit trace but negative eigenvalue
  EXPECT_THROW(DensityMatrix2(neg).validate(), ValidationError);
}

TEST(TraceDistance, MatchesEigenvalueDefinition) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 100; ++k) {
    const BlochVector a = random_ball(rng);
    const BlochVector b = random_ball(rng);
    const double expected = 0.5 * std::sqrt((a.u - b.u) * (a.u - b.u) +
                                            (a.v - b.v) * (a.v - b.v) +
                                            (a.w - b.w) * (a.w - b.w));
    EXPECT_NEAR(trace_distance(density_from_bloch(a), density_from_bloch(b)), expected, 1e-15);
  }
}

TEST(Fidelity, PureStatesReduceToOverlap) {
  EXPECT_NEAR(fidelity(DensityMatrix2::ground(), DensityMatrix2::excited()), 0.0, 1e-15);
  const DensityMatrix2 a = density_from_bloch({0, 0, 1});
  const DensityMatrix2 b = density_from_bloch({1, 0, 0});
  EXPECT_NEAR(fidelity(a, b), 0.5, 1e-15);
}

TEST(Fidelity, MixedStatesUseClosedFormUhlmann) {
  // F = Tr(rho sigma) + 2 sqrt(det rho det sigma) = (1 + a.b + sqrt((1-|a|^2)(1-|b|^2)))/2
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const BlochVector a = random_ball(rng);
    const BlochVector b = random_ball(rng);
    const double dot = a.u * b.u + a.v * b.v + a.w * b.w;
    const double expected =
        0.5 * (1.0 + dot + std::sqrt((1 - a.norm_squared()) * (1 - b.norm_squared())));
    EXPECT_NEAR(fidelity(density_from_bloch(a), density_from_bloch(b)), expected, 1e-14);
  }
}

TEST(TimeGrid, RejectsDegenerateInput) {
  EXPECT_THROW(TimeGrid({1.0}), ValidationError);
  EXPECT_THROW(TimeGrid({0.0, 1.0, 1.0}), ValidationError);
  EXPECT_THROW(TimeGrid({0.0, NAN}), ValidationError);
  EXPECT_THROW(TimeGrid::uniform(0.0, 0.0, 10), ValidationError);
  EXPECT_THROW(TimeGrid::uniform(0.0, 1.0, 1), ValidationError);
}

TEST(TimeGrid, UniformHitsEndpointsExactly) {
  const TimeGrid g = TimeGrid::uniform(-600.0, 600.0, 1201);
  EXPECT_EQ(g.size(), 1201u);
  EXPECT_EQ(g.front(), -600.0);
  EXPECT_EQ(g.back(), 600.0);
  EXPECT_DOUBLE_EQ(g[600], 0.0);
}

}  // namespace
}  // namespace revpulse
