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

#ifndef TOMOKIT_GAUSSIAN_HPP
#define TOMOKIT_GAUSSIAN_HPP

#include "tomokit/fock.hpp"

namespace tomokit {

/// One-mode Gaussian state: quadrature means and the real symmetric covariance matrix (hbar = 1,
/// vacuum variances 1/2). The time argument of sigma(t) is not modelled; states are snapshots.
struct GaussianState {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double sigma_qq = 0.5;
  double sigma_pp = 0.5;
  double sigma_pq = 0.0;

  static GaussianState vacuum() { return {}; }
  static GaussianState coherent(Complex alpha);
  static GaussianState thermal(double nbar);
  static GaussianState squeezed_vacuum(double r);
  /// D(alpha) S(r) rho_thermal(nbar) S(r)^dagger D(alpha)^dagger.
  static GaussianState squeezed_thermal(double nbar, double r, Complex alpha);

  double determinant() const { return sigma_qq * sigma_pp - sigma_pq * sigma_pq; }
  double trace() const { return sigma_qq + sigma_pp; }

  /// Throws SingularCovariance for a non positive-definite sigma and, when `quantum` is set, Domain
  /// when d < 1/4 - 1e-12.
  void validate(bool quantum = true) const;
};

struct GaussianMoments {
  double d = 0.0;  ///< det sigma
  double T = 0.0;  ///< tr sigma
  double L = 0.0;  ///< 1 + 2T + 4d
};

GaussianMoments moments(const GaussianState& g);

/// W(q,p) = exp(-Q sigma^{-1} Q^T / 2) / sqrt(det sigma), Q = (p - <p>, q - <q>), normalized so that
/// (1/2pi) int W dq dp = 1. sigma is indexed in the same (p, q) order as Q.
double wigner_eval(const GaussianState& g, PhasePoint point);

/// Fock-basis embedding for the composable family D(alpha) S(r) rho_th S^dagger D^dagger
/// (sigma_pq = 0). Throws Unsupported for sigma_pq != 0.
DensityMatrix to_fock(const GaussianState& g, int dim);

/// First and second moments computed from a Fock-basis operator.
GaussianState moments_from_fock(const OperatorMatrix& rho);

}  // namespace tomokit

#endif  // TOMOKIT_GAUSSIAN_HPP
