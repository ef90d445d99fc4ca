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

#include "tomokit/star_product.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "tomokit/error.hpp"
#include "tomokit/parallel.hpp"
#include "tomokit/symplectic.hpp"

namespace tomokit {

namespace {

void require_dims(int a, int b, const char* what) {
  if (a != b) throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
}

Complex trace_product(const Matrix& a, const Matrix& b) {
  // Tr(AB) without forming AB.
  return (a.transpose().cwiseProduct(b)).sum();
}

void require_nonzero_nu(double nu) {
  if (nu == 0.0) throw Error(ErrorKind::SingularSlice, "kernel undefined on the nu = 0 slice");
}

int photon_index(double n) {
  if (n < 0.0 || n != std::floor(n)) throw Error(ErrorKind::Domain, "photon number must be a nonnegative integer");
  return static_cast<int>(n);
}

}  // namespace

Complex symbol(const OperatorMatrix& rho, const DequantizerFamily& u, const LabelPoint& x) {
  const OperatorMatrix ux = u.eval(x, rho.dim());
  require_dims(rho.dim(), ux.dim(), "symbol");
  return trace_product(rho.matrix(), ux.matrix());
}

Complex symbol(const DensityMatrix& rho, const DequantizerFamily& u, const LabelPoint& x) {
  return symbol(rho.op(), u, x);
}

SampledSymbol sample_symbol(const OperatorMatrix& rho, const DequantizerFamily& u, const std::vector<LabelPoint>& points) {
  SampledSymbol out{u.coordinates, points, std::vector<Complex>(points.size())};
  parallel_for(points.size(), [&](size_t i) { out.values[i] = symbol(rho, u, points[i]); });
  for (const Complex& v : out.values) out.max_imag = std::max(out.max_imag, std::abs(v.imag()));
  out.imaginary_flag = u.hermitian && out.max_imag > 1e-10;
  return out;
}

SampledSymbol sample_symbol(const DensityMatrix& rho, const DequantizerFamily& u, const std::vector<LabelPoint>& points) {
  return sample_symbol(rho.op(), u, points);
}

OperatorMatrix reconstruct(const SampledSymbol& w, const QuantizerFamily& d, int dim) {
  if (w.points.size() != d.points.size() || w.values.size() != w.points.size()) {
    throw Error(ErrorKind::UndeclaredGrid, "sample count does not match the declared quadrature of " + d.label);
  }
  for (size_t i = 0; i < w.points.size(); ++i) {
    const LabelPoint& a = w.points[i];
    const LabelPoint& b = d.points[i];
    bool same = a.size() == b.size();
    for (size_t k = 0; same && k < a.size(); ++k) same = std::abs(a[k] - b[k]) <= 1e-12 * std::max(1.0, std::abs(b[k]));
    if (!same) throw Error(ErrorKind::UndeclaredGrid, "sample " + std::to_string(i) + " is not a declared node of " + d.label);
  }
  const std::vector<Complex> values = d.regularize ? d.regularize(w.values) : w.values;

  const size_t chunks = std::max<size_t>(1, std::min<size_t>(64, values.size()));
  std::vector<Matrix> partial(chunks, Matrix::Zero(dim, dim));
  parallel_for(chunks, [&](size_t c) {
    for (size_t i = c; i < values.size(); i += chunks) {
      if (values[i] == Complex(0.0, 0.0)) continue;
      const OperatorMatrix q = d.eval(d.points[i], dim);
      require_dims(dim, q.dim(), "reconstruct");
      partial[c] += (d.weights[i] * values[i]) * q.matrix();
    }
  });
  return OperatorMatrix(pairwise_reduce(std::move(partial), [](const Matrix& a, const Matrix& b) -> Matrix { return a + b; }));
}

Complex star_trace(const OperatorMatrix& rho1, const OperatorMatrix& rho2, const DequantizerFamily& u, const LabelPoint& x) {
  require_dims(rho1.dim(), rho2.dim(), "star_trace");
  return symbol(rho1 * rho2, u, x);
}

Complex star_trace(const DensityMatrix& rho1, const DensityMatrix& rho2, const DequantizerFamily& u, const LabelPoint& x) {
  return star_trace(rho1.op(), rho2.op(), u, x);
}

bool same_support(const KernelValue& a, const KernelValue& b, double tol) {
  return std::abs(std::abs(a.delta_argument) - std::abs(b.delta_argument)) <= tol;
}

KernelValue kernel_symplectic_quantum(const SymplecticPoint& x1, const SymplecticPoint& x2, const SymplecticPoint& x) {
  require_nonzero_nu(x.nu);
  const double phase = 0.5 * ((x1.nu * x2.mu - x2.nu * x1.mu) + 2.0 * x1.X + 2.0 * x2.X - 2.0 * (x1.nu + x2.nu) * x.X / x.nu);
  return KernelValue{std::polar(1.0 / (4.0 * kPi * kPi), phase), x.mu * (x1.nu + x2.nu) - x.nu * (x1.mu + x2.mu)};
}

KernelValue kernel_symplectic_classical(const SymplecticPoint& x1, const SymplecticPoint& x2, const SymplecticPoint& x) {
  require_nonzero_nu(x.nu);
  const double phase = x1.X + x2.X - x.X * (x1.nu + x2.nu) / x.nu;
  return KernelValue{std::polar(1.0 / (4.0 * kPi * kPi), phase), x.nu * (x1.mu + x2.mu) - x.mu * (x1.nu + x2.nu)};
}

Complex kernel_relation_check(const SymplecticPoint& x1, const SymplecticPoint& x2, const SymplecticPoint& x) {
  const KernelValue q = kernel_symplectic_quantum(x1, x2, x);
  const KernelValue c = kernel_symplectic_classical(x1, x2, x);
  if (!same_support(q, c)) throw Error(ErrorKind::Domain, "kernels supported on different constraint sets");
  if (std::abs(c.amplitude) == 0.0) throw Error(ErrorKind::SingularDenominator, "classical kernel amplitude is zero");
  return q.amplitude / c.amplitude;
}

Complex kernel_relation_phase(const SymplecticPoint& x1, const SymplecticPoint& x2) {
  return std::polar(1.0, 0.5 * (x2.mu * x1.nu - x1.mu * x2.nu));
}

DequantizerFamily symplectic_dequantizer_family() {
  DequantizerFamily f;
  f.label = "symplectic";
  f.coordinates = {"X", "mu", "nu"};
  f.eval = [](const LabelPoint& x, int dim) {
    if (x.size() != 3) throw Error(ErrorKind::Domain, "symplectic label point is (X, mu, nu)");
    return symplectic_dequantizer(x[0], x[1], x[2], dim);
  };
  return f;
}

DequantizerFamily photon_dequantizer_family() {
  DequantizerFamily f;
  f.label = "photon-number";
  f.coordinates = {"n", "re_alpha", "im_alpha"};
  f.eval = [](const LabelPoint& x, int dim) {
    if (x.size() != 3) throw Error(ErrorKind::Domain, "photon label point is (n, Re alpha, Im alpha)");
    const int n = photon_index(x[0]);
    if (n >= dim) throw Error(ErrorKind::Domain, "photon number outside [0, N)");
    // D(alpha)^dagger |n><n| D(alpha), so that Tr(rho U) = <n|D rho D^dagger|n>. Row n of D from the
    // closed-form elements.
    const Complex alpha(x[1], x[2]);
    Eigen::RowVectorXcd row(dim);
    for (int k = 0; k < dim; ++k) row(k) = displacement_element(alpha, n, k);
    return OperatorMatrix(row.adjoint() * row);
  };
  return f;
}

std::vector<LabelPoint> photon_label_points(const ReconstructionConfig& cfg, const AlphaGrid& grid) {
  cfg.validate();
  std::vector<LabelPoint> points;
  for (int i = 0; i < grid.re_count; ++i) {
    for (int j = 0; j < grid.im_count; ++j) {
      const Complex a = grid.at(i, j);
      if (std::abs(a) > cfg.disk_radius * (1.0 + 1e-12)) continue;
      for (int n = 0; n <= cfg.n_max; ++n) points.push_back({static_cast<double>(n), a.real(), a.imag()});
    }
  }
  return points;
}

QuantizerFamily photon_quantizer_family(const ReconstructionConfig& cfg, const AlphaGrid& grid) {
  QuantizerFamily f;
  f.label = "photon-number";
  f.coordinates = {"n", "re_alpha", "im_alpha"};
  f.domain = "alpha disk of radius " + std::to_string(cfg.disk_radius) + ", n <= " + std::to_string(cfg.n_max);
  f.points = photon_label_points(cfg, grid);
  for (int i = 0; i < grid.re_count; ++i) {
    for (int j = 0; j < grid.im_count; ++j) {
      if (std::abs(grid.at(i, j)) > cfg.disk_radius * (1.0 + 1e-12)) continue;
      for (int n = 0; n <= cfg.n_max; ++n) f.weights.push_back(grid.weight(i, j));
    }
  }
  f.eval = [cfg](const LabelPoint& x, int dim) {
    ReconstructionConfig c = cfg;
    c.dim = dim;
    return pn_quantizer(photon_index(x[0]), Complex(x[1], x[2]), c);
  };
  // Per alpha, replace the samples by the guarded series value carried on the n = 0 node (t^0 = 1);
  // rejected alphas contribute nothing.
  f.regularize = [cfg](const std::vector<Complex>& values) {
    const size_t block = static_cast<size_t>(cfg.n_max + 1);
    std::vector<Complex> out(values.size(), Complex(0.0, 0.0));
    std::vector<double> dist(block);
    for (size_t start = 0; start + block <= values.size(); start += block) {
      for (size_t n = 0; n < block; ++n) dist[n] = values[start + n].real();
      const SeriesVerdict v = weighted_photon_series(dist, cfg.t(), cfg.series_tol, cfg.block, cfg.method);
      if (v.accepted) out[start] = v.sum;
    }
    return out;
  };
  return f;
}

QuantizerFamily symplectic_quantizer_family(double r_max, int r_count, int phi_count, const XGrid& x) {
  if (!(r_max > 0.0) || r_count < 1 || phi_count < 1 || x.count < 2) {
    throw Error(ErrorKind::Config, "symplectic quadrature needs r_max > 0, r_count >= 1, phi_count >= 1, >= 2 X points");
  }
  QuantizerFamily f;
  f.label = "symplectic";
  f.coordinates = {"X", "mu", "nu"};
  f.domain = "polar frames r <= " + std::to_string(r_max) + ", X = r x with x in [" + std::to_string(x.min) + ", " +
             std::to_string(x.max) + "]";
  // Gauss-Legendre nodes on (0, r_max) by Golub-Welsch.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(r_count, r_count);
  for (int k = 1; k < r_count; ++k) jacobi(k, k - 1) = jacobi(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  const double dphi = 2.0 * kPi / phi_count;
  for (int a = 0; a < r_count; ++a) {
    const double r = 0.5 * r_max * (eig.eigenvalues()(a) + 1.0);
    const double dr = r_max * eig.eigenvectors()(0, a) * eig.eigenvectors()(0, a);
    for (int b = 0; b < phi_count; ++b) {
      const double phi = b * dphi;
      for (int i = 0; i < x.count; ++i) {
        f.points.push_back({r * x.at(i), r * std::cos(phi), r * std::sin(phi)});
        f.weights.push_back(r * dr * dphi * r * x.weight(i));
      }
    }
  }
  f.eval = [](const LabelPoint& p, int dim) { return symplectic_quantizer(p[0], p[1], p[2], dim); };
  return f;
}

}  // namespace tomokit
