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

#include "tomokit/gaussian.hpp"

#include <cmath>
#include <string>

namespace tomokit {

GaussianState GaussianState::coherent(Complex alpha) {
  GaussianState g;
  g.mean_q = std::sqrt(2.0) * alpha.real();
  g.mean_p = std::sqrt(2.0) * alpha.imag();
  return g;
}

GaussianState GaussianState::thermal(double nbar) {
  GaussianState g;
  g.sigma_qq = g.sigma_pp = nbar + 0.5;
  return g;
}

GaussianState GaussianState::squeezed_vacuum(double r) { return squeezed_thermal(0.0, r, 0.0); }

GaussianState GaussianState::squeezed_thermal(double nbar, double r, Complex alpha) {
  GaussianState g = coherent(alpha);
  g.sigma_qq = (nbar + 0.5) * std::exp(-2.0 * r);
  g.sigma_pp = (nbar + 0.5) * std::exp(2.0 * r);
  return g;
}

void GaussianState::validate(bool quantum) const {
  const double d = determinant();
  if (!(sigma_qq > 0.0) || !(sigma_pp > 0.0) || !(d > 0.0)) {
    throw Error(ErrorKind::SingularCovariance, "covariance matrix must be positive definite");
  }
  if (quantum && d < 0.25 - 1e-12) {
    throw Error(ErrorKind::Domain, "covariance violates the uncertainty bound: det = " + std::to_string(d));
  }
}

GaussianMoments moments(const GaussianState& g) {
  GaussianMoments m;
  m.d = g.determinant();
  m.T = g.trace();
  m.L = 1.0 + 2.0 * m.T + 4.0 * m.d;
  return m;
}

double wigner_eval(const GaussianState& g, PhasePoint point) {
  g.validate(false);
  const double d = g.determinant();
  const double dp = point.p - g.mean_p;
  const double dq = point.q - g.mean_q;
  // sigma in (p, q) order is [[s_pp, s_pq], [s_pq, s_qq]]; its inverse is [[s_qq, -s_pq], [-s_pq, s_pp]] / d.
  const double quad = (g.sigma_qq * dp * dp - 2.0 * g.sigma_pq * dp * dq + g.sigma_pp * dq * dq) / d;
  return std::exp(-0.5 * quad) / std::sqrt(d);
}

DensityMatrix to_fock(const GaussianState& g, int dim) {
  g.validate(true);
  if (g.sigma_pq != 0.0) {
    throw Error(ErrorKind::Unsupported, "Fock embedding needs sigma_pq = 0 (rotated covariances are not supported)");
  }
  const double d = g.determinant();
  const double nbar = std::max(0.0, std::sqrt(d) - 0.5);
  const double r = 0.25 * std::log(g.sigma_pp / g.sigma_qq);
  const Complex alpha = PhasePoint{g.mean_q, g.mean_p}.beta();

  DensityMatrix thermal = make_state(state::Thermal{nbar}, dim);
  Matrix m = thermal.matrix();
  if (r != 0.0) {
    const Matrix s = squeeze(r, dim).matrix();
    m = s * m * s.adjoint();
  }
  if (alpha != Complex(0.0, 0.0)) {
    const Matrix dm = displacement(alpha, dim).op.matrix();
    m = dm * m * dm.adjoint();
  }
  m = 0.5 * (m + m.adjoint()).eval();
  m /= m.trace().real();

  StateDiagnostics diag = thermal.diagnostics();
  auto rho = DensityMatrix::from_operator(OperatorMatrix(std::move(m)), diag);
  diag = rho.diagnostics();
  if (diag.leakage > 1e-8 && !diag.warning) {
    diag.warning = true;
    return DensityMatrix::from_operator(rho.op(), diag);
  }
  return rho;
}

GaussianState moments_from_fock(const OperatorMatrix& rho) {
  const auto [q, p] = quadratures(rho.dim());
  const double tr = rho.trace().real();
  const auto mean = [&](const OperatorMatrix& o) { return expectation(rho, o).real() / tr; };
  GaussianState g;
  g.mean_q = mean(q);
  g.mean_p = mean(p);
  g.sigma_qq = mean(q * q) - g.mean_q * g.mean_q;
  g.sigma_pp = mean(p * p) - g.mean_p * g.mean_p;
  g.sigma_pq = 0.5 * mean(q * p + p * q) - g.mean_q * g.mean_p;
  return g;
}

}  // namespace tomokit
