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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

namespace revpulse {

using cplx = std::complex<double>;

/// Slack allowed on |r| <= 1 before a Bloch vector counts as unphysical.
inline constexpr double kPhysicalitySlack = 1e-9;
/// Tolerance used for algebraic identities (Hermiticity, unit trace).
inline constexpr double kAlgebraicTol = 1e-12;

/// Bloch coordinates (u, v, w), dimensionless. w = P_e - P_g.
///
/// The transverse pair follows the sign convention under which the lab
/// Hamiltonian 1/2 w0 sz + Omega_R cos(phi) sx, the co-rotating frame
/// exp(-i phi sz/2) and the inversion formulas Omega = w'/v, Delta = u'/v all
/// hold together: u = -2 Re(rho_eg), v = -2 Im(rho_eg).
struct BlochVector {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  double norm() const;
  double norm_squared() const { return u * u + v * v + w * w; }

  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

/// 2x2 density matrix in the basis (|e>, |g>), so that sz|e> = +|e>.
class DensityMatrix2 {
 public:
  using Matrix = Eigen::Matrix2cd;

  DensityMatrix2();
  explicit DensityMatrix2(const Matrix& m) : m_(m) {}

  static DensityMatrix2 excited();
  static DensityMatrix2 ground();
  static DensityMatrix2 maximally_mixed();

  const Matrix& matrix() const { return m_; }

  cplx ee() const { return m_(0, 0); }
  cplx eg() const { return m_(0, 1); }
  cplx ge() const { return m_(1, 0); }
  cplx gg() const { return m_(1, 1); }

  double population_excited() const { return m_(0, 0).real(); }
  double population_ground() const { return m_(1, 1).real(); }

  cplx trace() const { return m_.trace(); }
  cplx determinant() const { return m_.determinant(); }
  /// max |rho - rho^dagger| over entries.
  double hermiticity_defect() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

  /// (rho + rho^dagger) / 2.
  DensityMatrix2 symmetrized() const;

  /// Throws ValidationError unless Hermitian, unit trace and positive
  /// semidefinite within `tol`.
  void validate(double tol = kAlgebraicTol) const;

 private:
  Matrix m_;
};

/// Strictly increasing sample times in picoseconds, at least two points.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times_ps);
  static TimeGrid uniform(double start_ps, double end_ps, std::size_t samples);

  std::span<const double> times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  double operator[](std::size_t i) const { return times_[i]; }
  double front() const { return times_.front(); }
  double back() const { return times_.back(); }
  double span_ps() const { return times_.back() - times_.front(); }
  bool contains(double t_ps) const { return t_ps >= front() && t_ps <= back(); }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<double> times_;
};

BlochVector bloch_from_density(const DensityMatrix2& rho);

/// Throws ValidationError when |r| > 1 + kPhysicalitySlack.
DensityMatrix2 density_from_bloch(const BlochVector& r);

/// Same map without the physicality check; for integrator output that may sit
/// a rounding error outside the ball.
DensityMatrix2 density_from_bloch_unchecked(const BlochVector& r);

/// Tr(rho^2).
double purity(const DensityMatrix2& rho);

/// |<sx> - i<sy>| / 2.
double coherence(const DensityMatrix2& rho);

/// Half the trace norm of the difference; for 2x2 equals |r1 - r2| / 2.
double trace_distance(const DensityMatrix2& a, const DensityMatrix2& b);

/// Squared Uhlmann fidelity, closed form for qubits:
/// Tr(rho sigma) + 2 sqrt(det rho det sigma).
double fidelity(const DensityMatrix2& a, const DensityMatrix2& b);

}  // namespace revpulse
