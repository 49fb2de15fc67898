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

#include "revpulse/trajectory.hpp"

#include <cmath>

#include <Eigen/Core>
#include <fmt/format.h>

#include "revpulse/error.hpp"
#include "revpulse/ode.hpp"

namespace revpulse {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, std::string_view name, std::string_view rule, double value) {
  if (!ok) {
    throw ValidationError(
        fmt::format("trajectory.{}: must satisfy {} (got {})", name, rule, value));
  }
}

void validate_transfer(const Transfer& p) {
  require(std::isfinite(p.a_i) && std::abs(p.a_i) <= 1.0, "a_i", "|a_i| <= 1", p.a_i);
  require(std::isfinite(p.a_f) && std::abs(p.a_f) <= 1.0, "a_f", "|a_f| <= 1", p.a_f);
  require(std::isfinite(p.alpha) && p.alpha > 0.0, "alpha", "alpha > 0", p.alpha);
  require(std::isfinite(p.sigma) && p.sigma > 0.0, "sigma", "sigma > 0", p.sigma);
  require(std::isfinite(p.amplitude), "A", "finite", p.amplitude);
  require(std::isfinite(p.tau), "tau", "finite", p.tau);
}

// Logistic function without overflow for large |x|.
double logistic(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

TrajPoint eval_transfer(const Transfer& p, double t) {
  const double g = logistic(p.alpha * t);
  const double dg = p.alpha * g * (1.0 - g);
  const double x = t - p.tau;
  const double u = p.amplitude * std::exp(-0.5 * x * x / (p.sigma * p.sigma));
  return {.t = t,
          .u = u,
          .w = p.a_i * (1.0 - g) + p.a_f * g,
          .du_dt = -u * x / (p.sigma * p.sigma),
          .dw_dt = (p.a_f - p.a_i) * dg};
}

}  // namespace

std::string_view family_name(const TrajectorySpec& spec) {
  return std::visit(overloaded{[](const Transfer&) { return std::string_view("transfer"); },
                               [](const Oscillatory&) { return std::string_view("oscillatory"); },
                               [](const RabiDecay&) { return std::string_view("rabi_decay"); }},
                    spec);
}

void validate(const TrajectorySpec& spec) {
  std::visit(overloaded{
                 [](const Transfer& p) { validate_transfer(p); },
                 [](const Oscillatory& p) {
                   validate_transfer(p.base);
                   require(std::isfinite(p.chi), "chi", "finite", p.chi);
                   require(std::isfinite(p.omega), "omega_osc", "finite", p.omega);
                 },
                 [](const RabiDecay& p) {
                   require(p.k1 >= 0.0 && p.k1 <= 1.0, "k1", "0 <= k1 <= 1", p.k1);
                   require(p.k2 >= 0.0 && p.k2 <= 1.0, "k2", "0 <= k2 <= 1", p.k2);
                   require(std::isfinite(p.decay) && p.decay >= 0.0, "a", "a >= 0", p.decay);
                   require(std::isfinite(p.chirp), "b", "finite", p.chirp);
                   require(std::isfinite(p.omega1), "omega1", "finite", p.omega1);
                   require(std::isfinite(p.omega2), "omega2", "finite", p.omega2);
                 }},
             spec);
}

TrajPoint eval_components(const TrajectorySpec& spec, double t) {
  return std::visit(
      overloaded{
          [t](const Transfer& p) { return eval_transfer(p, t); },
          [t](const Oscillatory& p) {
            TrajPoint pt = eval_transfer(p.base, t);
            pt.w += p.chi * std::cos(p.omega * t);
            pt.dw_dt -= p.chi * p.omega * std::sin(p.omega * t);
            return pt;
          },
          [t](const RabiDecay& p) {
            const double envelope = p.k1 * std::exp(-p.decay * t * t);
            const double theta = p.omega1 * t + p.chirp * t * t;
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            return TrajPoint{
                .t = t,
                .u = p.k2 * std::sin(p.omega2 * t),
                .w = envelope * c,
                .du_dt = p.k2 * p.omega2 * std::cos(p.omega2 * t),
                .dw_dt = envelope * (-2.0 * p.decay * t * c -
                                     (p.omega1 + 2.0 * p.chirp * t) * s)};
          }},
      spec);
}

ClosedCompletion complete_v_closed(const TrajPoint& p, bool with_derivative) {
  const double s = 1.0 - p.u * p.u - p.w * p.w;
  if (!(s >= -kAlgebraicTol)) {
    throw SingularityError(
        SingularityError::Kind::OffSphere, p.t,
        fmt::format("prescription leaves the Bloch sphere at t = {} ps "
                    "(u^2 + w^2 = {:.15g} > 1)",
                    p.t, 1.0 - s));
  }
  ClosedCompletion out{.v = std::sqrt(std::max(s, 0.0)), .dv_dt = std::nullopt};
  if (with_derivative) {
    if (out.v < kVMin) {
      throw SingularityError(
          SingularityError::Kind::BlochCompletion, p.t,
          fmt::format("v = {:.3e} < v_min at t = {} ps: completion derivative "
                      "is singular",
                      out.v, p.t));
    }
    out.dv_dt = -(p.u * p.du_dt + p.w * p.dw_dt) / out.v;
  }
  return out;
}

std::vector<double> solve_consistent_v_open(const TrajectorySpec& spec,
                                            const DecoherenceRates& rates,
                                            double v0, const TimeGrid& grid,
                                            const ConsistentVOptions& opts) {
  rates.validate();
  if (!(v0 >= kVMin)) {
    throw SingularityError(
        SingularityError::Kind::ConsistentV, grid.front(),
        fmt::format("initial v = {:.3e} is below v_min", v0));
  }
  using State = Eigen::Matrix<double, 1, 1>;
  const double transverse = rates.transverse();
  const double s_min = kVMin * kVMin;

  auto rhs = [&](double t, const State& s) {
    const TrajPoint p = eval_components(spec, t);
    State ds;
    ds(0) = -2.0 * transverse * s(0) -
            2.0 * ((p.du_dt + transverse * p.u) * p.u +
                   (p.dw_dt - w_damping(rates, p.w)) * p.w);
    return ds;
  };
  auto fail = [&](double t, double s) {
    throw SingularityError(
        SingularityError::Kind::ConsistentV, t,
        fmt::format("v^2 = {:.3e} fell below v_min^2 at t = {} ps: the "
                    "prescription is incompatible with the dissipation",
                    s, t));
  };

  std::vector<double> v(grid.size(), 0.0);
  State s0;
  s0(0) = v0 * v0;
  ode::Options ode_opts{.rtol = opts.rtol, .atol = opts.atol};
  ode::integrate(
      rhs, s0, grid.times(), ode_opts,
      [&](std::size_t i, double t, const State& s) {
        if (s(0) < s_min) fail(t, s(0));
        v[i] = std::sqrt(s(0));
      },
      [&](double) { return opts.max_step; },
      [&](double t, State& s) {
        if (s(0) < s_min) fail(t, s(0));
        return false;
      });
  return v;
}

}  // namespace revpulse
