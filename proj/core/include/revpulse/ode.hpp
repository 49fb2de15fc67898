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

// Dormand-Prince 5(4) embedded Runge-Kutta pair with step-size control and
// Hairer's fourth-order continuous extension. Works on any fixed-size Eigen
// type (real or complex); complex entries count as one component each in the
// error norm.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include <fmt/format.h>

#include "revpulse/error.hpp"

namespace revpulse::ode {

struct Options {
  double rtol = 1e-10;
  double atol = 1e-10;
  /// 0 selects the initial step automatically.
  double initial_step = 0.0;
  std::size_t max_steps = 20'000'000;
  /// Sorted times no step may cross; steps end exactly on them. Used for the
  /// knots of piecewise-polynomial coefficients, where the solution loses
  /// smoothness and the embedded error estimate is unreliable.
  std::span<const double> breakpoints{};
};

struct Stats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
  /// Largest absolute local error estimate over accepted steps.
  double max_error_estimate = 0.0;
};

namespace detail {

template <class State>
double scaled_rms(const State& e, const State& y0, const State& y1, double atol,
                  double rtol) {
  const auto scale =
      (atol + rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).eval();
  return std::sqrt((e.cwiseAbs().array() / scale).square().mean());
}

// Butcher tableau.
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                        c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                        a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                        a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                        a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                        a76 = 11.0 / 84.0;
// Difference between fifth- and fourth-order weights.
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                        e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                        e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension.
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0,
                        d7 = 69997945.0 / 29380423.0;

}  // namespace detail

struct Unbounded {
  double operator()(double) const {
    return std::numeric_limits<double>::infinity();
  }
};

struct NoHook {
  template <class State>
  bool operator()(double, State&) const {
    return false;
  }
};

/// Integrates y' = rhs(t, y) from outputs.front() to outputs.back(), starting
/// from `y` at outputs.front(). `observe(index, t, state)` is called for every
/// output time (including the first) with the dense-output state.
/// `max_step(t)` bounds the step taken from t. `hook(t, y)` runs after every
/// accepted step and returns true when it modified y.
template <class State, class Rhs, class Observer, class MaxStep = Unbounded,
          class Hook = NoHook>
Stats integrate(Rhs&& rhs, State y, std::span<const double> outputs,
                const Options& opts, Observer&& observe,
                MaxStep&& max_step = {}, Hook&& hook = {}) {
  using namespace detail;
  Stats stats;
  if (outputs.empty()) {
    return stats;
  }
  double t = outputs.front();
  const double t_end = outputs.back();
  observe(std::size_t{0}, t, static_cast<const State&>(y));
  std::size_t next = 1;
  while (next < outputs.size() && outputs[next] <= t) {
    observe(next, outputs[next], static_cast<const State&>(y));
    ++next;
  }
  if (next >= outputs.size()) {
    return stats;
  }

  auto eval = [&](double tt, const State& yy) {
    ++stats.rhs_evaluations;
    return State(rhs(tt, yy));
  };

  State k1 = eval(t, y);

  double h = opts.initial_step;
  if (h <= 0.0) {
    const State zero = State::Zero();
    const double d0 = scaled_rms(y, y, zero, opts.atol, opts.rtol);
    const double df = scaled_rms(k1, y, zero, opts.atol, opts.rtol);
    double h0 = (d0 < 1e-5 || df < 1e-5) ? 1e-6 : 0.01 * d0 / df;
    h0 = std::min({h0, max_step(t), t_end - t});
    const State y1 = y + h0 * k1;
    const State f1 = eval(t + h0, y1);
    const double d2 =
        scaled_rms(State(f1 - k1), y, zero, opts.atol, opts.rtol) / h0;
    const double dmax = std::max(df, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                    : std::pow(0.01 / dmax, 1.0 / 5.0);
    h = std::min(100.0 * h0, h1);
  }

  const auto& bps = opts.breakpoints;
  std::size_t bp = 0;
  auto next_stop = [&]() {
    const double eps = 1e-12 * std::max(1.0, std::abs(t));
    while (bp < bps.size() && bps[bp] <= t + eps) ++bp;
    return bp < bps.size() ? std::min(bps[bp], t_end) : t_end;
  };

  bool last_rejected = false;
  std::size_t attempts = 0;
  while (next < outputs.size()) {
    if (++attempts > opts.max_steps) {
      throw IntegrationError(
          fmt::format("step budget of {} exhausted at t = {} ps",
                      opts.max_steps, t),
          t);
    }
    h = std::min(h, max_step(t));
    const double stop = next_stop();
    bool hits_stop = false;
    if (t + h >= stop || stop - (t + h) < 1e-12 * std::max(1.0, std::abs(stop))) {
      h = stop - t;
      hits_stop = true;
    }
    const double h_min =
        16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (!(h > h_min)) {
      throw IntegrationError(
          fmt::format("step size underflow (h = {:.3e} ps) at t = {} ps", h, t),
          t);
    }

    const State k2 = eval(t + c2 * h, State(y + h * (a21 * k1)));
    const State k3 = eval(t + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
    const State k4 =
        eval(t + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    const State k5 = eval(
        t + c5 * h,
        State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const double t_new = hits_stop ? stop : t + h;
    const State k6 = eval(
        t_new,
        State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    const State y_new =
        y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const State k7 = eval(t_new, y_new);
    const State err =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double err_norm = scaled_rms(err, y, y_new, opts.atol, opts.rtol);
    if (!std::isfinite(err_norm)) {
      throw IntegrationError(
          fmt::format("non-finite state or error estimate at t = {} ps", t), t);
    }

    if (err_norm <= 1.0) {
      ++stats.steps;
      stats.max_error_estimate =
          std::max(stats.max_error_estimate, err.cwiseAbs().maxCoeff());

      if (next < outputs.size() && outputs[next] <= t_new) {
        const State ydiff = y_new - y;
        const State bspl = h * k1 - ydiff;
        const State r4 = ydiff - h * k7 - bspl;
        const State r5 =
            h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        while (next < outputs.size() && outputs[next] <= t_new) {
          const double tq = outputs[next];
          if (tq == t_new) {
            observe(next, tq, y_new);
          } else {
            const double th = (tq - t) / h;
            const double th1 = 1.0 - th;
            const State yq =
                y + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5)));
            observe(next, tq, yq);
          }
          ++next;
        }
      }

      t = t_new;
      y = y_new;
      k1 = k7;
      if (hook(t, y)) {
        k1 = eval(t, y);
      }
      double fac = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.2);
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
      h *= fac;
      last_rejected = false;
    } else {
      ++stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
      last_rejected = true;
    }
  }
  return stats;
}

}  // namespace revpulse::ode
