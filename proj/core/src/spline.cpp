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

#include "revpulse/spline.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "revpulse/error.hpp"

namespace revpulse {

namespace {

double one_sided_slope(double h0, double h1, double y0, double y1, double y2) {
  return -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * y0 +
         (h0 + h1) / (h0 * h1) * y1 - h0 / (h1 * (h0 + h1)) * y2;
}

}  // namespace

CubicSpline::CubicSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), m_(x.size(), 0.0) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw ValidationError(fmt::format(
        "spline needs matching node/value arrays with >= 2 points (got {} and "
        "{})",
        x_.size(), y_.size()));
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw ValidationError("spline nodes must be strictly increasing");
    }
  }

  if (n > 2) {
    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];
    const double s0 = one_sided_slope(h[0], h[1], y_[0], y_[1], y_[2]);
    const double sn = -one_sided_slope(h[n - 2], h[n - 3], y_[n - 1], y_[n - 2],
                                       y_[n - 3]);

    // Tridiagonal system for the second derivatives (Thomas algorithm).
    std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
    diag[0] = 2.0 * h[0];
    upper[0] = h[0];
    rhs[0] = 6.0 * ((y_[1] - y_[0]) / h[0] - s0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      lower[i] = h[i - 1];
      diag[i] = 2.0 * (h[i - 1] + h[i]);
      upper[i] = h[i];
      rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
    }
    lower[n - 1] = h[n - 2];
    diag[n - 1] = 2.0 * h[n - 2];
    rhs[n - 1] = 6.0 * (sn - (y_[n - 1] - y_[n - 2]) / h[n - 2]);

    for (std::size_t i = 1; i < n; ++i) {
      const double f = lower[i] / diag[i - 1];
      diag[i] -= f * upper[i - 1];
      rhs[i] -= f * rhs[i - 1];
    }
    m_[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
      m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    }
  }

  cumulative_.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x_[i + 1] - x_[i];
    cumulative_[i + 1] = cumulative_[i] + 0.5 * h * (y_[i] + y_[i + 1]) -
                         h * h * h * (m_[i] + m_[i + 1]) / 24.0;
  }
}

std::size_t CubicSpline::interval(double x) const {
  const double slack = 1e-12 * std::max({1.0, std::abs(x_.front()), std::abs(x_.back())});
  if (!(x >= x_.front() - slack && x <= x_.back() + slack)) {
    throw ValidationError(fmt::format(
        "t = {} ps lies outside the sampled span [{}, {}] ps", x, x_.front(),
        x_.back()));
  }
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const auto idx = static_cast<std::size_t>(std::distance(x_.begin(), it));
  return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, x_.size() - 2);
}

double CubicSpline::operator()(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double b = x - x_[i];
  if (x == x_[i + 1]) return y_[i + 1];
  // Power form about the left node so that every node is reproduced exactly.
  const double c1 = (y_[i + 1] - y_[i]) / h - h * (2.0 * m_[i] + m_[i + 1]) / 6.0;
  const double c2 = 0.5 * m_[i];
  const double c3 = (m_[i + 1] - m_[i]) / (6.0 * h);
  return y_[i] + b * (c1 + b * (c2 + b * c3));
}

double CubicSpline::derivative(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double a = x_[i + 1] - x;
  const double b = x - x_[i];
  return -m_[i] * a * a / (2.0 * h) + m_[i + 1] * b * b / (2.0 * h) -
         (y_[i] / h - m_[i] * h / 6.0) + (y_[i + 1] / h - m_[i + 1] * h / 6.0);
}

double CubicSpline::integral(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double a = x_[i + 1] - x;
  const double b = x - x_[i];
  const double h2 = h * h;
  return cumulative_[i] + m_[i] * (h2 * h2 - a * a * a * a) / (24.0 * h) +
         m_[i + 1] * b * b * b * b / (24.0 * h) +
         (y_[i] / h - m_[i] * h / 6.0) * (h2 - a * a) / 2.0 +
         (y_[i + 1] / h - m_[i + 1] * h / 6.0) * b * b / 2.0;
}

std::vector<double> CubicSpline::cumulative_integral() const { return cumulative_; }

}  // namespace revpulse
