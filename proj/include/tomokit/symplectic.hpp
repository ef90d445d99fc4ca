// Copyright 2026 The tomokit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOMOKIT_SYMPLECTIC_HPP
#define TOMOKIT_SYMPLECTIC_HPP

#include <functional>
#include <vector>

#include "tomokit/fock.hpp"

namespace tomokit {

/// Harmonic-oscillator eigenfunctions psi_0..psi_{n_max} at x, by the upward three-term recurrence.
std::vector<double> hermite_functions(int n_max, double x);

struct WignerValue {
  double value = 0.0;
  /// Truncation leakage of rho; the displaced parity itself is evaluated from exact matrix elements.
  double leakage = 0.0;
};

/// W(q,p) = 2 Tr[rho D(beta) (-1)^{a^dagger a} D(-beta)], normalized so that (1/2pi) int W = 1.
WignerValue wigner_from_fock_detailed(const DensityMatrix& rho, PhasePoint point);
double wigner_from_fock(const DensityMatrix& rho, PhasePoint point);

/// rho_alpha = D(alpha)^{-1} rho D(alpha).
OperatorMatrix displaced_density(const DensityMatrix& rho, Complex alpha);

struct DisplacementCheck {
  double residual = 0.0;
  double displaced_value = 0.0;  ///< W of rho_alpha at (q, p)
  double shifted_value = 0.0;    ///< W of rho at (q + sqrt2 Re alpha, p + sqrt2 Im alpha)
  bool truncation_warning = false;
};

/// Compares the Wigner function of the explicitly conjugated state with the shifted original.
DisplacementCheck wigner_displacement_check(const DensityMatrix& rho, Complex alpha, PhasePoint point);

/// w(X, mu, nu) = <delta(mu q + nu p - X)> from the rotated-quadrature eigenbasis:
/// with r = |(mu, nu)|, theta = atan2(nu, mu), w = (1/r) sum rho_mn e^{i(n-m)theta} psi_m(X/r) psi_n(X/r).
/// Throws DegenerateFrame for (mu, nu) = (0, 0).
double tomogram_from_fock(const DensityMatrix& rho, double X, double mu, double nu);

/// delta(X - mu q - nu p) as a Fock-basis operator: (1/r) |X/r>_theta <X/r|.
OperatorMatrix symplectic_dequantizer(double X, double mu, double nu, int dim);

/// (1/2pi) exp(iX - i nu p - i mu q) = (1/2pi) e^{iX} D((nu - i mu)/sqrt2).
OperatorMatrix symplectic_quantizer(double X, double mu, double nu, int dim);

using TomogramFn = std::function<double(double X, double mu, double nu)>;

/// Uniform 1-D grid including both end points.
struct XGrid {
  double min = -8.0;
  double max = 8.0;
  int count = 256;

  double step() const { return count > 1 ? (max - min) / (count - 1) : 0.0; }
  double at(int i) const { return min + i * step(); }
  double weight(int i) const { return (i == 0 || i == count - 1) ? 0.5 * step() : step(); }
};

/// Uniform 2-D grid over (q, p), values stored row-major in q then p.
struct Grid2D {
  double q_min = -8.0;
  double q_max = 8.0;
  int q_count = 256;
  double p_min = -8.0;
  double p_max = 8.0;
  int p_count = 256;

  double q_step() const { return (q_max - q_min) / (q_count - 1); }
  double p_step() const { return (p_max - p_min) / (p_count - 1); }
  double q(int i) const { return q_min + i * q_step(); }
  double p(int j) const { return p_min + j * p_step(); }
  size_t size() const { return static_cast<size_t>(q_count) * p_count; }
};

/// Normalization of a phase-space grid: unit integral, or (1/2pi) int = 1 as for Wigner functions.
/// The two differ by exactly 2pi.
enum class Normalization { UnitIntegral, TwoPi };

/// Classical density f_cl or Wigner function W sampled on a Grid2D.
struct PhaseSpaceGrid {
  Grid2D grid;
  std::vector<double> values;
  Normalization norm = Normalization::TwoPi;

  double at(int i, int j) const { return values[static_cast<size_t>(i) * grid.p_count + j]; }
  /// Trapezoid integral of the stored values.
  double integral() const;
  /// Same object in the other convention.
  PhaseSpaceGrid converted(Normalization target) const;
};

PhaseSpaceGrid sample_phase_space(const std::function<double(PhasePoint)>& f, const Grid2D& grid,
                                  Normalization norm);

/// Line integral of the grid (unit-integral scaling) along mu q + nu p = X, with the 1/r Jacobian of the
/// delta function. Cubic convolution interpolation; zero outside the grid.
double radon(const PhaseSpaceGrid& f, double X, double mu, double nu);

struct Frame {
  double mu = 1.0;
  double nu = 0.0;
};

/// frames[k] = (cos phi_k, sin phi_k), phi_k = k pi / count.
std::vector<Frame> optical_frames(int count);

/// w sampled on a shared X grid for a list of (mu, nu) frames, frame-major.
struct SymplecticTomogram {
  XGrid x;
  std::vector<Frame> frames;
  std::vector<double> samples;

  double at(size_t frame, int i) const { return samples[frame * static_cast<size_t>(x.count) + i]; }
  double& at(size_t frame, int i) { return samples[frame * static_cast<size_t>(x.count) + i]; }
};

SymplecticTomogram sample_tomogram(const TomogramFn& w, const XGrid& x, const std::vector<Frame>& frames);
SymplecticTomogram radon_tomogram(const PhaseSpaceGrid& f, const XGrid& x, const std::vector<Frame>& frames);

enum class AngularInterpolation { Linear, Cubic };

struct InverseRadonOptions {
  Grid2D target;
  Normalization norm = Normalization::TwoPi;
  AngularInterpolation angular = AngularInterpolation::Linear;
  /// Radial frequency cutoff; 0 picks the radius where every slice's characteristic function drops
  /// below 1e-12 (or below the noise floor seen near the X-sampling Nyquist frequency).
  double freq_cutoff = 0.0;
};

struct InverseRadonResult {
  PhaseSpaceGrid grid;
  double freq_cutoff = 0.0;
  double freq_step = 0.0;
  bool aliasing_warning = false;
};

/// G(mu, nu) = int w(X, mu, nu) e^{iX} dX for the frame of `t` scaled by r.
Complex characteristic(const SymplecticTomogram& t, size_t frame, double r);

/// Inverts optical-slice tomograms (frames on the unit circle, angles in [0, pi)) through the
/// characteristic function: G on each slice, interpolated across angles onto a Cartesian frequency
/// grid, then f = (1/4pi^2) int G e^{-i(mu q + nu p)} dmu dnu.
InverseRadonResult inverse_radon(const SymplecticTomogram& t, const InverseRadonOptions& opt);

struct OpticalSlice {
  XGrid x;
  std::vector<double> w;
  double integral = 0.0;
};

/// Homodyne distribution w(X, cos phi, sin phi); phi is reduced modulo 2pi.
OpticalSlice optical_slice(const TomogramFn& w, double phi, const XGrid& x);

struct TomogramCheckSpec {
  XGrid x{-12.0, 12.0, 961};
  std::vector<Frame> frames = optical_frames(12);
  std::vector<double> lambdas{-2.0, 0.5, 3.0};
};

struct TomogramReport {
  double max_negativity = 0.0;  ///< max(0, -min w)
  double max_normalization_error = 0.0;
  std::vector<double> normalization_errors;  ///< per frame
  std::vector<double> homogeneity_residuals;  ///< per lambda
  int homogeneity_pairs = 0;                  ///< sampled form: frame pairs related by scaling
  bool negative_flag = false;

  double max_homogeneity_residual() const;
  bool passes(double negativity_tol = 1e-12, double normalization_tol = 1e-6,
              double homogeneity_tol = 1e-8) const;
};

/// Nonnegativity, per-frame normalization and |lambda| w(lambda X, lambda mu, lambda nu) = w(X, mu, nu).
TomogramReport validate_tomogram(const TomogramFn& w, const TomogramCheckSpec& spec = {});

/// Sampled form: homogeneity is only checked between frames that are scalar multiples of each other,
/// with linear interpolation in X.
TomogramReport validate_tomogram(const SymplecticTomogram& t);

}  // namespace tomokit

#endif  // TOMOKIT_SYMPLECTIC_HPP
