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

#include "tomokit/fock.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace tomokit {

namespace {

void require_dim(int dim) {
  if (dim < 2) throw Error(ErrorKind::InvalidDimension, "truncation N must be >= 2, got " + std::to_string(dim));
}

constexpr double kTruncationWarning = 1e-8;

// Eigenbasis of the truncated Hermitian generator i(a^dagger - a), cached per dimension.
struct GeneratorBasis {
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;
};

const GeneratorBasis& generator_basis(int dim) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GeneratorBasis>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[dim];
  if (!slot) {
    Matrix h = Matrix::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
      const double s = std::sqrt(n + 1.0);
      h(n + 1, n) = Complex(0.0, s);
      h(n, n + 1) = Complex(0.0, -s);
    }
    const Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    slot = std::make_unique<GeneratorBasis>(GeneratorBasis{es.eigenvalues(), es.eigenvectors()});
  }
  return *slot;
}

}  // namespace

OperatorMatrix::OperatorMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw Error(ErrorKind::InvalidDimension, "operator matrix must be square");
  require_dim(static_cast<int>(m_.rows()));
}

OperatorMatrix OperatorMatrix::zero(int dim) {
  require_dim(dim);
  return OperatorMatrix(Matrix::Zero(dim, dim));
}

OperatorMatrix OperatorMatrix::identity(int dim) {
  require_dim(dim);
  return OperatorMatrix(Matrix::Identity(dim, dim));
}

double OperatorMatrix::hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  if (other.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "operator sum");
  m_ += other.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "operator product");
  return OperatorMatrix(a.matrix() * b.matrix());
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix r = a;
  r += b;
  return r;
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "operator difference");
  return OperatorMatrix(a.matrix() - b.matrix());
}

OperatorMatrix operator*(Complex s, const OperatorMatrix& a) { return OperatorMatrix(s * a.matrix()); }

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "max_abs_diff");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

DensityMatrix DensityMatrix::from_operator(OperatorMatrix op, StateDiagnostics diag) {
  const double herm = op.hermiticity_error();
  if (herm > kHermitianTol) {
    throw Error(ErrorKind::Domain, "density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const Complex tr = op.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw Error(ErrorKind::Domain, "density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  Matrix h = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigenTol) {
    throw Error(ErrorKind::Domain,
                "density matrix has negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  }
  diag.leakage = truncation_leakage(op);
  return DensityMatrix(std::move(op), diag);
}

DensityMatrix DensityMatrix::pure(const Vector& psi, StateDiagnostics diag) {
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > 0.0)) throw Error(ErrorKind::Domain, "zero state vector");
  Vector v = psi / std::sqrt(norm2);
  Matrix m = v * v.adjoint();
  // Exact Hermiticity; the outer product is only Hermitian up to rounding otherwise.
  m = 0.5 * (m + m.adjoint()).eval();
  return from_operator(OperatorMatrix(std::move(m)), diag);
}

Complex PhasePoint::beta() const { return Complex(q, p) / std::sqrt(2.0); }

PhasePoint PhasePoint::from_beta(Complex beta) {
  return PhasePoint{std::sqrt(2.0) * beta.real(), std::sqrt(2.0) * beta.imag()};
}

LadderPair ladder(int dim) {
  require_dim(dim);
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Matrix ad = a.adjoint();
  return {OperatorMatrix(std::move(a)), OperatorMatrix(std::move(ad))};
}

QuadraturePair quadratures(int dim) {
  auto [a, ad] = ladder(dim);
  const double s = 1.0 / std::sqrt(2.0);
  Matrix q = s * (a.matrix() + ad.matrix());
  Matrix p = (a.matrix() - ad.matrix()) * Complex(0.0, -s);
  return {OperatorMatrix(std::move(q)), OperatorMatrix(std::move(p))};
}

OperatorMatrix parity(int dim) {
  require_dim(dim);
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return OperatorMatrix(std::move(m));
}

OperatorMatrix number_operator(int dim) {
  require_dim(dim);
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
  return OperatorMatrix(std::move(m));
}

OperatorMatrix matrix_exp(const OperatorMatrix& generator) { return OperatorMatrix(generator.matrix().exp()); }

Complex displacement_element(Complex alpha, int m, int n) {
  const double x = std::norm(alpha);
  if (x == 0.0) return m == n ? 1.0 : 0.0;
  // <m|D|n> = sqrt(n!/m!) alpha^(m-n) e^{-|alpha|^2/2} L_n^(m-n)(|alpha|^2), m >= n;
  // the m < n branch follows from D(alpha)^dagger = D(-alpha).
  const int lo = std::min(m, n);
  const int hi = std::max(m, n);
  const int k = hi - lo;
  const double log_pre = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0)) - 0.5 * x +
                         0.5 * k * std::log(x);
  const double lag = std::assoc_laguerre(static_cast<unsigned>(lo), static_cast<unsigned>(k), x);
  const Complex unit = alpha / std::abs(alpha);
  Complex phase = (m >= n) ? std::pow(unit, k) : std::pow(-std::conj(unit), k);
  return phase * (std::exp(log_pre) * lag);
}

Displacement displacement(Complex alpha, int dim, DisplacementRoute route) {
  require_dim(dim);
  const bool near = std::norm(alpha) > dim / 4.0;
  if (route == DisplacementRoute::Analytic) {
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) = displacement_element(alpha, r, c);
    return {OperatorMatrix(std::move(m)), near};
  }
  if (alpha == Complex(0.0, 0.0)) return {OperatorMatrix::identity(dim), near};
  // alpha a^dagger - alpha^* a = |alpha| U (a^dagger - a) U^dagger with U = e^{i theta n}, and
  // a^dagger - a = -i H for the Hermitian H of the cached basis, so D = W e^{-i|alpha| Lambda} W^dagger, W = U V.
  const GeneratorBasis& basis = generator_basis(dim);
  const double r = std::abs(alpha);
  const double theta = std::arg(alpha);
  Matrix w = basis.eigenvectors;
  for (int n = 0; n < dim; ++n) w.row(n) *= std::polar(1.0, n * theta);
  Matrix wd = w;
  for (int k = 0; k < dim; ++k) wd.col(k) *= std::polar(1.0, -r * basis.eigenvalues(k));
  return {OperatorMatrix(wd * w.adjoint()), near};
}

OperatorMatrix squeeze(double r, int dim) {
  require_dim(dim);
  if (r == 0.0) return OperatorMatrix::identity(dim);
  auto [a, ad] = ladder(dim);
  Matrix gen = (0.5 * r) * (a.matrix() * a.matrix() - ad.matrix() * ad.matrix());
  return OperatorMatrix(gen.exp());
}

namespace {

DensityMatrix finish_pure(Vector psi, double kept_weight) {
  StateDiagnostics diag;
  diag.renormalization = std::max(0.0, 1.0 - kept_weight);
  diag.warning = diag.renormalization > kTruncationWarning;
  auto rho = DensityMatrix::pure(psi, diag);
  return rho;
}

struct StateBuilder {
  int dim;

  DensityMatrix operator()(const state::Fock& s) const {
    if (s.n < 0 || s.n >= dim) {
      throw Error(ErrorKind::Domain, "Fock index " + std::to_string(s.n) + " outside [0, N)");
    }
    Vector psi = Vector::Zero(dim);
    psi(s.n) = 1.0;
    return finish_pure(std::move(psi), 1.0);
  }

  DensityMatrix operator()(const state::Coherent& s) const {
    if (!std::isfinite(s.alpha.real()) || !std::isfinite(s.alpha.imag())) {
      throw Error(ErrorKind::Domain, "coherent amplitude must be finite");
    }
    Vector psi(dim);
    psi(0) = std::exp(-0.5 * std::norm(s.alpha));
    for (int n = 1; n < dim; ++n) psi(n) = psi(n - 1) * s.alpha / std::sqrt(static_cast<double>(n));
    return finish_pure(psi, psi.squaredNorm());
  }

  DensityMatrix operator()(const state::Thermal& s) const {
    if (!(s.nbar >= 0.0) || !std::isfinite(s.nbar)) {
      throw Error(ErrorKind::Domain, "thermal occupation must be >= 0");
    }
    const double ratio = s.nbar / (s.nbar + 1.0);
    Matrix m = Matrix::Zero(dim, dim);
    double p = 1.0 / (s.nbar + 1.0);
    double kept = 0.0;
    for (int n = 0; n < dim; ++n) {
      m(n, n) = p;
      kept += p;
      p *= ratio;
    }
    m /= kept;
    StateDiagnostics diag;
    diag.renormalization = std::pow(ratio, dim);
    diag.warning = diag.renormalization > kTruncationWarning;
    return DensityMatrix::from_operator(OperatorMatrix(std::move(m)), diag);
  }

  DensityMatrix operator()(const state::SqueezedVacuum& s) const {
    if (!std::isfinite(s.r)) throw Error(ErrorKind::Domain, "squeezing must be finite");
    Vector psi = Vector::Zero(dim);
    const double t = std::tanh(s.r);
    double c = 1.0 / std::sqrt(std::cosh(s.r));
    for (int m = 0; 2 * m < dim; ++m) {
      psi(2 * m) = c;
      c *= -t * std::sqrt((2.0 * m + 1.0) / (2.0 * m + 2.0));
    }
    return finish_pure(psi, psi.squaredNorm());
  }
};

}  // namespace

DensityMatrix make_state(const StateSpec& spec, int dim) {
  require_dim(dim);
  return std::visit(StateBuilder{dim}, spec);
}

double truncation_leakage(const OperatorMatrix& rho) {
  const int dim = rho.dim();
  const int keep = static_cast<int>(std::ceil(0.75 * dim));
  double low = 0.0;
  for (int n = 0; n < keep; ++n) low += rho(n, n).real();
  return std::max(0.0, rho.trace().real() - low);
}

Complex expectation(const OperatorMatrix& rho, const OperatorMatrix& o) {
  if (rho.dim() != o.dim()) throw Error(ErrorKind::DimensionMismatch, "expectation");
  return (rho.matrix().cwiseProduct(o.matrix().transpose())).sum();
}

double fidelity(const DensityMatrix& target, const OperatorMatrix& candidate) {
  if (target.dim() != candidate.dim()) throw Error(ErrorKind::DimensionMismatch, "fidelity");
  // Work in the numerical support of the target, so that rounding-level eigenvalues do not enter
  // through their square roots.
  Eigen::SelfAdjointEigenSolver<Matrix> es(target.matrix());
  const double top = es.eigenvalues().maxCoeff();
  std::vector<int> keep;
  for (int i = 0; i < target.dim(); ++i) {
    if (es.eigenvalues()(i) > 1e-14 * top) keep.push_back(i);
  }
  Matrix basis(target.dim(), static_cast<Eigen::Index>(keep.size()));
  for (size_t k = 0; k < keep.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]) * std::sqrt(es.eigenvalues()(keep[k]));
  }
  Matrix c = 0.5 * (candidate.matrix() + candidate.matrix().adjoint());
  Matrix sandwich = basis.adjoint() * c * basis;
  sandwich = 0.5 * (sandwich + sandwich.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es2(sandwich, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es2.eigenvalues().size(); ++i) s += std::sqrt(std::max(0.0, es2.eigenvalues()(i)));
  return s * s;
}

}  // namespace tomokit
