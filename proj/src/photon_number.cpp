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

#include "tomokit/photon_number.hpp"

#include <cmath>
#include <string>

#include "tomokit/hermite2.hpp"
#include "tomokit/parallel.hpp"

namespace tomokit {

AlphaGrid AlphaGrid::square(double radius, int points) {
  return AlphaGrid{-radius, radius, points, -radius, radius, points};
}

double AlphaGrid::weight(int i_re, int i_im) const {
  const auto w1 = [](int i, int count, double step) {
    if (count == 1) return 1.0;
    return (i == 0 || i == count - 1) ? 0.5 * step : step;
  };
  return w1(i_re, re_count, re_step()) * w1(i_im, im_count, im_step());
}

PhotonTomogram::PhotonTomogram(int n_max, AlphaGrid grid) : n_max_(n_max), grid_(grid) {
  if (n_max < 0) throw Error(ErrorKind::Domain, "n_max must be >= 0");
  if (grid.re_count < 1 || grid.im_count < 1) throw Error(ErrorKind::UndeclaredGrid, "empty alpha grid");
  values_.assign(static_cast<size_t>(grid.size()) * (n_max + 1), 0.0);
}

void ReconstructionConfig::validate() const {
  if (!(s > 0.0 && s < 1.0)) {
    throw Error(ErrorKind::Config, "ordering parameter s must lie in (0, 1), got " + std::to_string(s));
  }
  if (dim < 2) throw Error(ErrorKind::Config, "truncation N must be >= 2");
  if (n_max < 0 || n_max >= dim) {
    throw Error(ErrorKind::Config, "n_max must satisfy 0 <= n_max < N, got " + std::to_string(n_max));
  }
  if (!(disk_radius > 0.0)) throw Error(ErrorKind::Config, "alpha disk radius must be positive");
  if (!(series_tol > 0.0)) throw Error(ErrorKind::Config, "series tolerance must be positive");
  if (block < 1) throw Error(ErrorKind::Config, "series block size must be >= 1");
}

namespace {

Matrix displaced_state(const DensityMatrix& rho, Complex alpha) {
  const Matrix d = displacement(alpha, rho.dim()).op.matrix();
  return d * rho.matrix() * d.adjoint();
}

}  // namespace

double pn_tomogram(const DensityMatrix& rho, int n, Complex alpha) {
  if (n < 0 || n >= rho.dim()) {
    throw Error(ErrorKind::Domain, "photon number " + std::to_string(n) + " outside [0, N)");
  }
  return displaced_state(rho, alpha)(n, n).real();
}

std::vector<double> pn_distribution(const DensityMatrix& rho, int n_max, Complex alpha) {
  if (n_max < 0 || n_max >= rho.dim()) throw Error(ErrorKind::Domain, "n_max must satisfy 0 <= n_max < N");
  const Matrix m = displaced_state(rho, alpha);
  std::vector<double> out(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) out[static_cast<size_t>(n)] = m(n, n).real();
  return out;
}

PhotonTomogram pn_tomogram_grid(const DensityMatrix& rho, int n_max, const AlphaGrid& grid) {
  if (n_max >= rho.dim()) throw Error(ErrorKind::Domain, "n_max must be < N");
  PhotonTomogram out(n_max, grid);
  parallel_for(static_cast<size_t>(grid.size()), [&](size_t k) {
    const int i_re = static_cast<int>(k) / grid.im_count;
    const int i_im = static_cast<int>(k) % grid.im_count;
    const Matrix m = displaced_state(rho, grid.at(i_re, i_im));
    for (int n = 0; n <= n_max; ++n) out.at(n, i_re, i_im) = m(n, n).real();
  });
  return out;
}

namespace {

Matrix ordered_kernel(Complex alpha, const ReconstructionConfig& cfg) {
  const Matrix d = displacement(alpha, cfg.dim).op.matrix();
  Eigen::VectorXcd powers(cfg.dim);
  double tk = 1.0;
  for (int k = 0; k < cfg.dim; ++k) {
    powers(k) = tk;
    tk *= cfg.t();
  }
  return d.adjoint() * powers.asDiagonal() * d;
}

}  // namespace

OperatorMatrix pn_quantizer(int n, Complex alpha, const ReconstructionConfig& cfg) {
  cfg.validate();
  if (n < 0) throw Error(ErrorKind::Domain, "photon number must be >= 0");
  const double scale = cfg.prefactor() * std::pow(cfg.t(), -n);
  Matrix q = scale * ordered_kernel(alpha, cfg);
  q = 0.5 * (q + q.adjoint()).eval();
  return OperatorMatrix(std::move(q));
}

SeriesVerdict weighted_photon_series(std::span<const double> omega, double t, double tol, int block,
                                     SeriesMethod method) {
  if (method == SeriesMethod::Adaptive) {
    const SeriesVerdict direct = weighted_photon_series(omega, t, tol, block, SeriesMethod::Direct);
    const SeriesVerdict euler = weighted_photon_series(omega, t, tol, block, SeriesMethod::Euler);
    if (direct.diverging) return euler;
    if (euler.diverging) return direct;
    return direct.last_block_max <= euler.last_block_max ? direct : euler;
  }
  const int n_terms = static_cast<int>(omega.size());
  std::vector<double> terms(static_cast<size_t>(n_terms));
  const double z = 1.0 / t;
  if (method == SeriesMethod::Direct) {
    double zn = 1.0;
    for (int n = 0; n < n_terms; ++n) {
      terms[static_cast<size_t>(n)] = zn * omega[static_cast<size_t>(n)];
      zn *= z;
    }
  } else {
    // sum_n a_n z^n = sum_k u^k (Delta^k a)_0 / (1 - z), u = z / (1 - z).
    std::vector<double> diff(omega.begin(), omega.end());
    const double u = z / (1.0 - z);
    double uk = 1.0 / (1.0 - z);
    for (int k = 0; k < n_terms; ++k) {
      terms[static_cast<size_t>(k)] = uk * diff[0];
      for (int j = 0; j + 1 < n_terms - k; ++j) diff[static_cast<size_t>(j)] = diff[j + 1] - diff[j];
      uk *= u;
    }
  }

  SeriesVerdict v;
  std::vector<double> block_sizes;
  double block_sum = 0.0;
  const int last_block_start = std::max(0, n_terms - block);
  for (int n = 0; n < n_terms; ++n) {
    const double term = terms[static_cast<size_t>(n)];
    v.sum += term;
    block_sum += term;
    if (n >= last_block_start) v.last_block_max = std::max(v.last_block_max, std::abs(term));
    if ((n + 1) % block == 0 || n + 1 == n_terms) {
      block_sizes.push_back(std::abs(block_sum));
      block_sum = 0.0;
    }
  }
  // Diverging: the increments between consecutive block partial sums grew three times in a row.
  const size_t b = block_sizes.size();
  if (b >= 4) {
    v.diverging = block_sizes[b - 4] < block_sizes[b - 3] && block_sizes[b - 3] < block_sizes[b - 2] &&
                  block_sizes[b - 2] < block_sizes[b - 1];
  }
  v.accepted = !v.diverging && v.last_block_max <= tol;
  return v;
}

PhotonReconstruction pn_reconstruct(const PhotonTomogram& omega, const ReconstructionConfig& cfg) {
  cfg.validate();
  const AlphaGrid& grid = omega.grid();
  const int n_use = std::min(omega.n_max(), cfg.n_max);
  const double c = cfg.prefactor();
  const double t = cfg.t();

  // Per-point status: 0 outside disk, 1 accepted, 2 rejected.
  std::vector<int> status(static_cast<size_t>(grid.size()), 0);
  std::vector<double> magnitude(static_cast<size_t>(grid.size()), 0.0);
  std::vector<int> diverging(static_cast<size_t>(grid.re_count), 0);
  std::vector<Matrix> rows(static_cast<size_t>(grid.re_count), Matrix::Zero(cfg.dim, cfg.dim));

  parallel_for(static_cast<size_t>(grid.re_count), [&](size_t i) {
    const int i_re = static_cast<int>(i);
    for (int i_im = 0; i_im < grid.im_count; ++i_im) {
      const Complex alpha = grid.at(i_re, i_im);
      const size_t k = static_cast<size_t>(i_re) * grid.im_count + i_im;
      if (std::abs(alpha) > cfg.disk_radius * (1.0 + 1e-12)) continue;
      const auto dist = omega.photon_distribution(i_re, i_im).first(static_cast<size_t>(n_use + 1));
      const SeriesVerdict v = weighted_photon_series(dist, t, cfg.series_tol, cfg.block, cfg.method);
      if (!v.accepted) {
        status[k] = 2;
        if (v.diverging) ++diverging[i];
        continue;
      }
      status[k] = 1;
      if (v.sum == 0.0) continue;
      const Matrix q = ordered_kernel(alpha, cfg);
      const double scale = c * grid.weight(i_re, i_im) * v.sum;
      rows[i] += scale * q;
      magnitude[k] = std::abs(c * v.sum) * q.cwiseAbs().maxCoeff();
    }
  });

  PhotonReconstruction out{OperatorMatrix::zero(cfg.dim)};
  for (size_t k = 0; k < status.size(); ++k) {
    if (status[k] == 1) ++out.accepted_points;
    if (status[k] == 2) ++out.rejected_points;
  }
  for (int d : diverging) out.diverging_points += d;
  if (out.accepted_points == 0) {
    throw Error(ErrorKind::Divergence, "photon series failed the convergence guard at every displacement");
  }

  for (int i_re = 0; i_re < grid.re_count; ++i_re) {
    for (int i_im = 0; i_im < grid.im_count; ++i_im) {
      const size_t k = static_cast<size_t>(i_re) * grid.im_count + i_im;
      if (status[k] != 1) continue;
      bool rim = false;
      const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (const auto& o : nb) {
        const int a = i_re + o[0];
        const int b = i_im + o[1];
        if (a < 0 || b < 0 || a >= grid.re_count || b >= grid.im_count ||
            status[static_cast<size_t>(a) * grid.im_count + b] != 1) {
          rim = true;
        }
      }
      if (rim) out.tail_estimate = std::max(out.tail_estimate, magnitude[k]);
    }
  }

  Matrix sum = pairwise_reduce(std::move(rows), [](const Matrix& a, const Matrix& b) -> Matrix { return a + b; });
  sum = 0.5 * (sum + sum.adjoint()).eval();
  out.rho = OperatorMatrix(std::move(sum));
  return out;
}

Eigen::Matrix2cd r_matrix(const GaussianState& g) {
  const GaussianMoments m = moments(g);
  if (m.L == 0.0) throw Error(ErrorKind::SingularDenominator, "1 + 2T + 4d = 0");
  const double diff = g.sigma_pp - g.sigma_qq;
  const double off = (1.0 - 4.0 * m.d) / m.L;
  Eigen::Matrix2cd r;
  r(0, 0) = Complex(2.0 * diff, -4.0 * g.sigma_pq) / m.L;
  r(1, 1) = Complex(2.0 * diff, 4.0 * g.sigma_pq) / m.L;
  r(0, 1) = off;
  r(1, 0) = off;
  return r;
}

double y_denominator(const GaussianState& g) {
  return 4.0 * g.sigma_pq * g.sigma_pq - (2.0 * g.sigma_qq - 1.0) * (2.0 * g.sigma_pp - 1.0);
}

std::pair<Complex, Complex> y_args(const GaussianState& g, Complex alpha) {
  const double den = y_denominator(g);
  if (den == 0.0) throw Error(ErrorKind::SingularDenominator, "2T - 4d - 1 = 0 (vacuum-like covariance)");
  const double t_minus_1 = g.trace() - 1.0;
  const double s2 = std::sqrt(2.0);
  const Complex shifted_conj = Complex(g.mean_q, -g.mean_p) + s2 * std::conj(alpha);
  const Complex shifted = Complex(g.mean_q, g.mean_p) + s2 * alpha;
  const Complex squeeze(g.sigma_pp - g.sigma_qq, 2.0 * g.sigma_pq);
  const Complex y1 = (s2 / den) * (shifted_conj * t_minus_1 + squeeze * shifted);
  return {y1, std::conj(y1)};
}

double p0(const GaussianState& g, Complex alpha) {
  const GaussianMoments m = moments(g);
  if (!(m.L > 0.0)) throw Error(ErrorKind::Domain, "L = 1 + 2T + 4d must be positive");
  const double s2 = std::sqrt(2.0);
  const double pp = g.mean_p + s2 * alpha.imag();
  const double qq = g.mean_q + s2 * alpha.real();
  const double quad = (2.0 * g.sigma_qq + 1.0) * pp * pp + (2.0 * g.sigma_pp + 1.0) * qq * qq;
  return 2.0 / std::sqrt(m.L) * std::exp(-quad / m.L) * std::exp(4.0 * g.sigma_pq / m.L * pp * qq);
}

namespace {

struct AnalyticValue {
  double value;
  double imag;
};

AnalyticValue analytic_tomogram(const GaussianState& g, int n, Complex alpha) {
  const auto [y1, y2] = y_args(g, alpha);
  HermiteContext ctx(r_matrix(g));
  const ScaledComplex h = ctx.scaled(n, n, y1, y2);
  const double base = p0(g, alpha);
  if (h.is_zero() || base == 0.0) return {0.0, 0.0};
  const double log_mag = h.log_abs() - std::lgamma(n + 1.0) + std::log(base);
  const Complex phase = h.mantissa() / std::abs(h.mantissa());
  const Complex v = std::exp(log_mag) * phase;
  return {v.real(), v.imag()};
}

}  // namespace

GaussianTomogramValue pn_tomogram_gaussian(const GaussianState& g, int n, Complex alpha, int fallback_dim) {
  g.validate(true);
  if (n < 0) throw Error(ErrorKind::Domain, "photon number must be >= 0");
  GaussianTomogramValue out;
  if (std::abs(y_denominator(g)) < 1e-13) {
    out.matrix_fallback = true;
    out.value = pn_tomogram(to_fock(g, fallback_dim), n, alpha);
    GaussianState eps = g;
    eps.sigma_qq += 1e-6;
    eps.sigma_pp += 1e-6;
    out.limit_value = analytic_tomogram(eps, n, alpha).value;
    out.diagnostic = "singular y-argument denominator 2T-4d-1; matrix branch used (N=" +
                     std::to_string(fallback_dim) + ")";
    return out;
  }
  const AnalyticValue v = analytic_tomogram(g, n, alpha);
  out.value = v.value;
  if (out.value < -1e-9) {
    out.discrepancy = true;
    out.diagnostic = "negative photon probability " + std::to_string(out.value);
  } else if (std::abs(v.imag) > 1e-9 * std::max(1.0, std::abs(v.value))) {
    out.discrepancy = true;
    out.diagnostic = "imaginary part " + std::to_string(v.imag);
  }
  return out;
}

}  // namespace tomokit
