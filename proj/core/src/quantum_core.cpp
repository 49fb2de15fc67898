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

#include "revpulse/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "revpulse/error.hpp"

namespace revpulse {

double BlochVector::norm() const { return std::sqrt(norm_squared()); }

DensityMatrix2::DensityMatrix2() : m_(Matrix::Zero()) { m_(1, 1) = 1.0; }

DensityMatrix2 DensityMatrix2::excited() {
  Matrix m = Matrix::Zero();
  m(0, 0) = 1.0;
  return DensityMatrix2(m);
}

DensityMatrix2 DensityMatrix2::ground() { return DensityMatrix2(); }

DensityMatrix2 DensityMatrix2::maximally_mixed() {
  return DensityMatrix2(Matrix::Identity() * 0.5);
}

double DensityMatrix2::hermiticity_defect() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix2::min_eigenvalue() const {
  const double a = m_(0, 0).real();
  const double d = m_(1, 1).real();
  const cplx b = 0.5 * (m_(0, 1) + std::conj(m_(1, 0)));
  const double mean = 0.5 * (a + d);
  const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return mean - half_gap;
}

DensityMatrix2 DensityMatrix2::symmetrized() const {
  return DensityMatrix2(0.5 * (m_ + m_.adjoint()));
}

void DensityMatrix2::validate(double tol) const {
  if (std::abs(m_(1, 0) - std::conj(m_(0, 1))) > tol ||
      std::abs(m_(0, 0).imag()) > tol || std::abs(m_(1, 1).imag()) > tol) {
    throw ValidationError(
        fmt::format("density matrix is not Hermitian (defect {:.3e})",
                    hermiticity_defect()));
  }
  const cplx tr = trace();
  if (std::abs(tr - 1.0) > tol) {
    throw ValidationError(
        fmt::format("density matrix trace is {:.15g}, expected 1", tr.real()));
  }
  if (determinant().real() < -tol || min_eigenvalue() < -tol) {
    throw ValidationError(
        fmt::format("density matrix is not positive semidefinite (min "
                    "eigenvalue {:.3e})",
                    min_eigenvalue()));
  }
}

TimeGrid::TimeGrid(std::vector<double> times_ps) : times_(std::move(times_ps)) {
  if (times_.size() < 2) {
    throw ValidationError("time grid needs at least 2 points");
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i])) {
      throw ValidationError(fmt::format("time grid point {} is not finite", i));
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw ValidationError(fmt::format(
          "time grid is not strictly increasing at index {} ({} ps <= {} ps)",
          i, times_[i], times_[i - 1]));
    }
  }
}

TimeGrid TimeGrid::uniform(double start_ps, double end_ps, std::size_t samples) {
  if (samples < 2) {
    throw ValidationError("time grid needs at least 2 samples");
  }
  if (!(end_ps > start_ps)) {
    throw ValidationError(fmt::format(
        "time window [{}, {}] ps is empty or reversed", start_ps, end_ps));
  }
  std::vector<double> t(samples);
  const double step = (end_ps - start_ps) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    t[i] = start_ps + step * static_cast<double>(i);
  }
  t.back() = end_ps;
  return TimeGrid(std::move(t));
}

BlochVector bloch_from_density(const DensityMatrix2& rho) {
  const cplx eg = rho.eg();
  return {-2.0 * eg.real(), -2.0 * eg.imag(),
          (rho.ee() - rho.gg()).real()};
}

DensityMatrix2 density_from_bloch_unchecked(const BlochVector& r) {
  DensityMatrix2::Matrix m;
  m(0, 0) = 0.5 * (1.0 + r.w);
  m(1, 1) = 0.5 * (1.0 - r.w);
  m(0, 1) = cplx(-0.5 * r.u, -0.5 * r.v);
  m(1, 0) = std::conj(m(0, 1));
  return DensityMatrix2(m);
}

DensityMatrix2 density_from_bloch(const BlochVector& r) {
  const double n = r.norm();
  if (!(n <= 1.0 + kPhysicalitySlack)) {
    throw ValidationError(fmt::format(
        "Bloch vector ({}, {}, {}) has length {:.12g} > 1: unphysical state",
        r.u, r.v, r.w, n));
  }
  return density_from_bloch_unchecked(r);
}

double purity(const DensityMatrix2& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

double coherence(const DensityMatrix2& rho) {
  const BlochVector r = bloch_from_density(rho);
  return 0.5 * std::hypot(r.u, r.v);
}

double trace_distance(const DensityMatrix2& a, const DensityMatrix2& b) {
  const DensityMatrix2::Matrix d = a.matrix() - b.matrix();
  // d is Hermitian and traceless: eigenvalues are +-sqrt(d_ee^2 + |d_eg|^2).
  const double diag = 0.5 * (d(0, 0).real() - d(1, 1).real());
  const cplx off = 0.5 * (d(0, 1) + std::conj(d(1, 0)));
  return std::sqrt(diag * diag + std::norm(off));
}

double fidelity(const DensityMatrix2& a, const DensityMatrix2& b) {
  const double overlap = (a.matrix() * b.matrix()).trace().real();
  const double dets = std::max(0.0, a.determinant().real()) *
                      std::max(0.0, b.determinant().real());
  return std::clamp(overlap + 2.0 * std::sqrt(dets), 0.0, 1.0);
}

}  // namespace revpulse
