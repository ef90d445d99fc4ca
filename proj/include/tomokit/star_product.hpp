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

#ifndef TOMOKIT_STAR_PRODUCT_HPP
#define TOMOKIT_STAR_PRODUCT_HPP

#include <functional>
#include <string>
#include <vector>

#include "tomokit/fock.hpp"
#include "tomokit/photon_number.hpp"
#include "tomokit/symplectic.hpp"

namespace tomokit {

/// Coordinates of a label point x, e.g. (X, mu, nu) or (n, Re alpha, Im alpha).
using LabelPoint = std::vector<double>;

struct DequantizerFamily {
  std::string label;
  std::vector<std::string> coordinates;
  std::function<OperatorMatrix(const LabelPoint&, int dim)> eval;
  bool hermitian = true;
};

struct QuantizerFamily {
  std::string label;
  std::vector<std::string> coordinates;
  std::function<OperatorMatrix(const LabelPoint&, int dim)> eval;
  /// Declared quadrature: nodes and positive weights.
  std::vector<LabelPoint> points;
  std::vector<double> weights;
  std::string domain;
  /// Optional regularization of sampled values before the quadrature sum (photon series guard).
  std::function<std::vector<Complex>(const std::vector<Complex>&)> regularize;
};

/// Symbol values on a list of label points.
struct SampledSymbol {
  std::vector<std::string> coordinates;
  std::vector<LabelPoint> points;
  std::vector<Complex> values;
  double max_imag = 0.0;
  bool imaginary_flag = false;  ///< imaginary part above 1e-10 from a Hermitian family
};

/// Tr(rho U(x)).
Complex symbol(const OperatorMatrix& rho, const DequantizerFamily& u, const LabelPoint& x);
Complex symbol(const DensityMatrix& rho, const DequantizerFamily& u, const LabelPoint& x);

SampledSymbol sample_symbol(const OperatorMatrix& rho, const DequantizerFamily& u, const std::vector<LabelPoint>& points);
SampledSymbol sample_symbol(const DensityMatrix& rho, const DequantizerFamily& u, const std::vector<LabelPoint>& points);

/// sum_x weight(x) w(x) D(x). The samples must sit on the family's declared nodes (UndeclaredGrid otherwise).
OperatorMatrix reconstruct(const SampledSymbol& w, const QuantizerFamily& d, int dim);

/// Symbol of the product rho1 rho2: Tr(rho1 rho2 U(x)).
Complex star_trace(const OperatorMatrix& rho1, const OperatorMatrix& rho2, const DequantizerFamily& u, const LabelPoint& x);
Complex star_trace(const DensityMatrix& rho1, const DensityMatrix& rho2, const DequantizerFamily& u, const LabelPoint& x);

/// Label point (X, mu, nu) of the symplectic scheme.
struct SymplecticPoint {
  double X = 0.0;
  double mu = 1.0;
  double nu = 0.0;
};

/// amplitude * delta(delta_argument); the delta function is kept symbolic.
struct KernelValue {
  Complex amplitude;
  double delta_argument = 0.0;
};

/// True when both kernels are supported on the same set: |delta arguments| agree to 1e-12 (delta is even).
bool same_support(const KernelValue& a, const KernelValue& b, double tol = 1e-12);

/// Star-product kernel of two symplectic tomograms. Throws SingularSlice when nu = 0.
KernelValue kernel_symplectic_quantum(const SymplecticPoint& x1, const SymplecticPoint& x2, const SymplecticPoint& x);

/// Commutative kernel of classical tomograms. Throws SingularSlice when nu = 0.
KernelValue kernel_symplectic_classical(const SymplecticPoint& x1, const SymplecticPoint& x2, const SymplecticPoint& x);

/// K_quantum.amplitude / K_classical.amplitude; expected exp{i(mu2 nu1 - mu1 nu2)/2}.
Complex kernel_relation_check(const SymplecticPoint& x1, const SymplecticPoint& x2, const SymplecticPoint& x);

/// Expected value of kernel_relation_check.
Complex kernel_relation_phase(const SymplecticPoint& x1, const SymplecticPoint& x2);

DequantizerFamily symplectic_dequantizer_family();
DequantizerFamily photon_dequantizer_family();

/// s-ordered photon quantizer on the alpha grid of `grid` clipped to cfg.disk_radius, n = 0..cfg.n_max.
/// Nodes are alpha-major with n innermost; the series guard of pn_reconstruct is applied per alpha.
QuantizerFamily photon_quantizer_family(const ReconstructionConfig& cfg, const AlphaGrid& grid);

/// Nodes of photon_quantizer_family, usable for sampling a symbol.
std::vector<LabelPoint> photon_label_points(const ReconstructionConfig& cfg, const AlphaGrid& grid);

/// Symplectic quantizer on a polar frame grid: Gauss-Legendre r on (0, r_max), phi uniform on [0, 2pi),
/// X = r * x for x on `x`. Weight = r dr dphi * r dx, the Jacobian of (X, mu, nu).
QuantizerFamily symplectic_quantizer_family(double r_max, int r_count, int phi_count, const XGrid& x);

}  // namespace tomokit

#endif  // TOMOKIT_STAR_PRODUCT_HPP
