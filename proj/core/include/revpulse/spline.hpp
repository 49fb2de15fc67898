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

#include <span>
#include <vector>

namespace revpulse {

/// C2 cubic spline through (x_i, y_i). End slopes are clamped to the one-sided
/// three-point derivative, so linear and quadratic data are reproduced
/// exactly. Evaluation outside [x.front(), x.back()] throws ValidationError.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::span<const double> x, std::span<const double> y);

  double operator()(double x) const;
  double derivative(double x) const;
  /// Integral of the spline from x.front() to x.
  double integral(double x) const;
  /// Integral from x.front() to each node.
  std::vector<double> cumulative_integral() const;

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t interval(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at nodes
  std::vector<double> cumulative_;
};

}  // namespace revpulse
