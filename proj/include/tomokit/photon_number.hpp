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

#ifndef TOMOKIT_PHOTON_NUMBER_HPP
#define TOMOKIT_PHOTON_NUMBER_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tomokit/fock.hpp"
#include "tomokit/gaussian.hpp"

namespace tomokit {

// Convention: omega(n, alpha) = <n| D(alpha) rho D(alpha)^dagger |n>. The opposite conjugation
// D^dagger rho D gives omega(n, -alpha).

/// Rectangular grid of complex displacements, Re alpha major.
struct AlphaGrid {
  double re_min = -3.0;
  double re_max = 3.0;
  int re_count = 41;
  double im_min = -3.0;
  double im_max = 3.0;
  int im_count = 41;

  static AlphaGrid square(double radius, int points);

  double re_step() const { return re_count > 1 ? (re_max - re_min) / (re_count - 1) : 0.0; }
  double im_step() const { return im_count > 1 ? (im_max - im_min) / (im_count - 1) : 0.0; }
  Complex at(int i_re, int i_im) const { return {re_min + i_re * re_step(), im_min + i_im * im_step()}; }
  int size() const { return re_count * im_count; }
  /// Trapezoid weight for d(Re alpha) d(Im alpha).
  double weight(int i_re, int i_im) const;
};

/// omega(n, alpha) for n in [0, n_max] on an AlphaGrid.
class PhotonTomogram {
 public:
  PhotonTomogram(int n_max, AlphaGrid grid);

  int n_max() const { return n_max_; }
  const AlphaGrid& grid() const { return grid_; }

  double& at(int n, int i_re, int i_im) { return values_[index(n, i_re, i_im)]; }
  double at(int n, int i_re, int i_im) const { return values_[index(n, i_re, i_im)]; }
  std::span<const double> photon_distribution(int i_re, int i_im) const {
    return {values_.data() + index(0, i_re, i_im), static_cast<size_t>(n_max_ + 1)};
  }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

 private:
  size_t index(int n, int i_re, int i_im) const {
    return (static_cast<size_t>(i_re) * grid_.im_count + i_im) * (n_max_ + 1) + n;
  }

  int n_max_;
  AlphaGrid grid_;
  std::vector<double> values_;
};

/// How sum_n t^{-n} omega_n is evaluated from the finitely many photon probabilities.
enum class SeriesMethod {
  /// Plain partial sum. Only usable close to the state's centre: |t|^{-n} amplifies the terms.
  Direct,
  /// Euler transform in u = z/(1-z), z = 1/t, built from forward differences of omega_n.
  Euler,
  /// Whichever of the two has the smaller final block and is not diverging.
  Adaptive,
};

/// Reconstruction settings: ordering parameter s in (0, 1), photon cut-off n_max < dim, alpha disk.
struct ReconstructionConfig {
  double s = 0.5;
  int n_max = 23;
  int dim = 24;
  double disk_radius = 3.0;
  /// A displacement contributes only if the last block of the weighted photon series stays below this.
  double series_tol = 1e-4;
  int block = 4;
  SeriesMethod method = SeriesMethod::Adaptive;

  void validate() const;
  /// t = (s - 1)/(s + 1).
  double t() const { return (s - 1.0) / (s + 1.0); }
  /// 4 / (pi (1 - s^2)).
  double prefactor() const { return 4.0 / (kPi * (1.0 - s * s)); }
};

/// omega(n, alpha) from the Fock-basis density matrix.
double pn_tomogram(const DensityMatrix& rho, int n, Complex alpha);

/// omega(0..n_max, alpha) from one displaced state.
std::vector<double> pn_distribution(const DensityMatrix& rho, int n_max, Complex alpha);

/// Whole tomogram, one displacement per grid point.
PhotonTomogram pn_tomogram_grid(const DensityMatrix& rho, int n_max, const AlphaGrid& grid);

/// Quantizer 4/(pi(1-s^2)) t^{-n} D(alpha)^dagger t^{a^dagger a} D(alpha).
OperatorMatrix pn_quantizer(int n, Complex alpha, const ReconstructionConfig& cfg);

/// sum_n t^{-n} omega_n with the convergence verdict used by reconstruction.
struct SeriesVerdict {
  double sum = 0.0;
  /// Largest term magnitude over the final block.
  double last_block_max = 0.0;
  /// Block increments of the partial sums grew in magnitude over the last three consecutive blocks.
  bool diverging = false;
  bool accepted = false;
};

SeriesVerdict weighted_photon_series(std::span<const double> omega, double t, double tol, int block,
                                     SeriesMethod method = SeriesMethod::Adaptive);

struct PhotonReconstruction {
  OperatorMatrix rho;
  int accepted_points = 0;
  int rejected_points = 0;
  int diverging_points = 0;
  /// Largest |prefactor * series * Q(alpha)| entry over accepted points on the rim of the accepted
  /// region; small values mean the clipped integrand had already decayed.
  double tail_estimate = 0.0;
};

/// rho = sum_n int d^2 alpha quantizer(n, alpha) omega(n, alpha), trapezoid on the grid clipped to the
/// disk. Throws Config for invalid settings and Divergence when no displacement passes the guard.
PhotonReconstruction pn_reconstruct(const PhotonTomogram& omega, const ReconstructionConfig& cfg);

/// Complex symmetric matrix of the two-variable Hermite polynomial for a Gaussian state.
Eigen::Matrix2cd r_matrix(const GaussianState& g);

/// 2T - 4d - 1, evaluated as 4 s_pq^2 - (2 s_qq - 1)(2 s_pp - 1) to avoid cancellation near vacuum.
double y_denominator(const GaussianState& g);

/// (y1, y2 = conj(y1)). Throws SingularDenominator when 2T - 4d - 1 = 0.
std::pair<Complex, Complex> y_args(const GaussianState& g, Complex alpha);

/// Probability of no photons after displacement.
double p0(const GaussianState& g, Complex alpha);

struct GaussianTomogramValue {
  double value = 0.0;
  bool matrix_fallback = false;
  /// Analytic value in the perturbed thermal limit (only set on fallback).
  double limit_value = 0.0;
  /// Negative beyond 1e-9 or a non-negligible imaginary part.
  bool discrepancy = false;
  std::string diagnostic;
};

/// omega(n, alpha) = P0(alpha) H^R_{nn}(y1, y2) / n!. At the singular denominator the Fock-basis
/// route with `fallback_dim` levels supplies the value.
GaussianTomogramValue pn_tomogram_gaussian(const GaussianState& g, int n, Complex alpha, int fallback_dim = 96);

}  // namespace tomokit

#endif  // TOMOKIT_PHOTON_NUMBER_HPP
