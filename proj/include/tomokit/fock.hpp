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

#ifndef TOMOKIT_FOCK_HPP
#define TOMOKIT_FOCK_HPP

#include <complex>
#include <variant>

#include <Eigen/Dense>

#include "tomokit/error.hpp"

namespace tomokit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Square complex matrix of an operator in the truncated Fock basis {|0>, ..., |N-1>}.
class OperatorMatrix {
 public:
  /// Throws InvalidDimension unless `m` is square with dim >= 2.
  explicit OperatorMatrix(Matrix m);

  static OperatorMatrix zero(int dim);
  static OperatorMatrix identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  OperatorMatrix adjoint() const { return OperatorMatrix(m_.adjoint()); }
  Complex trace() const { return m_.trace(); }

  /// max |M - M^dagger| over all entries.
  double hermiticity_error() const;

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(Complex s);

 private:
  Matrix m_;
};

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex s, const OperatorMatrix& a);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);

/// Bookkeeping attached to constructed states.
struct StateDiagnostics {
  /// Trace removed by truncation before renormalizing (0 when nothing was lost).
  double renormalization = 0.0;
  /// Weight outside the lowest 75% of Fock levels.
  double leakage = 0.0;
  bool warning = false;
};

/// Validated density operator: Hermitian (1e-12), unit trace (1e-10), eigenvalues >= -1e-10.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenTol = 1e-10;

  /// Validates `op`; throws ErrorKind::Domain naming the violated invariant.
  static DensityMatrix from_operator(OperatorMatrix op, StateDiagnostics diag = {});
  /// |psi><psi| / <psi|psi>.
  static DensityMatrix pure(const Vector& psi, StateDiagnostics diag = {});

  const OperatorMatrix& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  int dim() const { return op_.dim(); }
  const StateDiagnostics& diagnostics() const { return diag_; }

 private:
  DensityMatrix(OperatorMatrix op, StateDiagnostics diag) : op_(std::move(op)), diag_(diag) {}

  OperatorMatrix op_;
  StateDiagnostics diag_;
};

/// Phase-space point in dimensionless quadratures; beta = (q + ip)/sqrt(2).
struct PhasePoint {
  double q = 0.0;
  double p = 0.0;

  Complex beta() const;
  static PhasePoint from_beta(Complex beta);
};

struct LadderPair {
  OperatorMatrix a;
  OperatorMatrix a_dagger;
};

struct QuadraturePair {
  OperatorMatrix q;
  OperatorMatrix p;
};

/// a|n> = sqrt(n)|n-1>. Truncation makes [a, a^dagger] = 1 except at (N-1, N-1), where it is -(N-1).
LadderPair ladder(int dim);

/// q = (a + a^dagger)/sqrt(2), p = (a - a^dagger)/(i sqrt(2)).
QuadraturePair quadratures(int dim);

/// Diagonal (-1)^n.
OperatorMatrix parity(int dim);

/// Number operator diag(0, 1, ..., N-1).
OperatorMatrix number_operator(int dim);

enum class DisplacementRoute {
  /// Closed-form matrix elements of the untruncated operator via associated Laguerre polynomials.
  Analytic,
  /// Scaling-and-squaring exponential of the truncated generator alpha a^dagger - alpha* a.
  Exponential,
};

struct Displacement {
  OperatorMatrix op;
  /// Set when |alpha|^2 > N/4.
  bool near_truncation = false;
};

/// D(alpha) = exp(alpha a^dagger - alpha* a) in the N-level basis.
Displacement displacement(Complex alpha, int dim,
                          DisplacementRoute route = DisplacementRoute::Exponential);

/// <m|D(alpha)|n> for the untruncated operator.
Complex displacement_element(Complex alpha, int m, int n);

/// S(r) = exp((r/2)(a^2 - a^dagger^2)); squeezes q by e^{-r}.
OperatorMatrix squeeze(double r, int dim);

/// Fock-basis exponential of an arbitrary matrix (Pade scaling and squaring).
OperatorMatrix matrix_exp(const OperatorMatrix& generator);

namespace state {
struct Fock {
  int n = 0;
};
struct Coherent {
  Complex alpha;
};
struct Thermal {
  double nbar = 0.0;
};
struct SqueezedVacuum {
  double r = 0.0;
};
}  // namespace state

using StateSpec = std::variant<state::Fock, state::Coherent, state::Thermal, state::SqueezedVacuum>;

/// Test-fixture states, renormalized after truncation. Diagnostics carry the truncated weight;
/// the warning flag is raised above 1e-8.
DensityMatrix make_state(const StateSpec& spec, int dim);

/// 1 - sum of the diagonal over the lowest ceil(0.75 N) levels.
double truncation_leakage(const OperatorMatrix& rho);

/// Tr(rho O).
Complex expectation(const OperatorMatrix& rho, const OperatorMatrix& o);

/// Uhlmann fidelity (Tr sqrt(sqrt(target) candidate sqrt(target)))^2. The candidate only needs to be
/// Hermitian; negative eigenvalues of the sandwiched product are clipped.
double fidelity(const DensityMatrix& target, const OperatorMatrix& candidate);

}  // namespace tomokit

#endif  // TOMOKIT_FOCK_HPP
