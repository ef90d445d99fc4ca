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


#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "tomokit/error.hpp"
#include "tomokit/star_product.hpp"

using namespace tomokit;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no tomokit::Error thrown";
  return ErrorKind::Format;
}

constexpr double kQuarterPi2 = 1.0 / (4.0 * M_PI * M_PI);

std::vector<LabelPoint> random_symplectic_points(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<LabelPoint> out;
  while (static_cast<int>(out.size()) < count) {
    const double mu = u(rng);
    const double nu = u(rng);
    if (std::hypot(mu, nu) < 0.1) continue;
    out.push_back({u(rng), mu, nu});
  }
  return out;
}

std::vector<LabelPoint> random_photon_points(std::mt19937_64& rng, int count, int n_max) {
  std::uniform_int_distribution<int> n(0, n_max);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<LabelPoint> out;
  for (int k = 0; k < count; ++k) out.push_back({static_cast<double>(n(rng)), u(rng), u(rng)});
  return out;
}

SymplecticPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  return {u(rng), u(rng), u(rng)};
}

}  // namespace

TEST(Symbol, ReferenceValues) {
  const DensityMatrix vac = make_state(state::Fock{0}, 16);
  const DequantizerFamily photon = photon_dequantizer_family();
  EXPECT_NEAR(std::abs(symbol(vac, photon, {0.0, 0.0, 0.0}) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(symbol(vac, photon, {1.0, 0.0, 0.0})), 0.0, 1e-15);
  const DequantizerFamily sym = symplectic_dequantizer_family();
  EXPECT_NEAR(std::abs(symbol(vac, sym, {0.0, 1.0, 0.0}) - 0.5641895835477563), 0.0, 1e-15);
}

TEST(Symbol, PhotonSchemeIsDisplacedPoisson) {
  const DensityMatrix vac = make_state(state::Fock{0}, 48);
  const DequantizerFamily photon = photon_dequantizer_family();
  const Complex alpha(0.9, -0.6);
  for (int n = 0; n < 8; ++n) {
    const Complex v = symbol(vac, photon, {static_cast<double>(n), alpha.real(), alpha.imag()});
    EXPECT_NEAR(v.real(), oracle::poisson(alpha, n), 1e-13);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
  }
}

TEST(Symbol, ErrorsAndImaginaryFlag) {
  const DensityMatrix vac = make_state(state::Fock{0}, 8);
  EXPECT_EQ(kind_of([&] { symbol(vac, photon_dequantizer_family(), {8.0, 0.0, 0.0}); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([&] { symbol(vac, photon_dequantizer_family(), {0.5, 0.0, 0.0}); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([&] { symbol(vac, symplectic_dequantizer_family(), {0.0, 1.0}); }), ErrorKind::Domain);
  DequantizerFamily wrong = photon_dequantizer_family();
  wrong.eval = [](const LabelPoint&, int) { return OperatorMatrix::identity(4); };
  EXPECT_EQ(kind_of([&] { symbol(vac, wrong, {0.0, 0.0, 0.0}); }), ErrorKind::DimensionMismatch);

  // A non-Hermitian operator gives complex symbols from a Hermitian family.
  Matrix m = Matrix::Zero(8, 8);
  m(0, 1) = Complex(1.0, 0.0);
  const SampledSymbol s = sample_symbol(OperatorMatrix(m), symplectic_dequantizer_family(), {{0.3, 0.6, 0.8}});
  EXPECT_TRUE(s.imaginary_flag);
  const SampledSymbol ok = sample_symbol(vac, symplectic_dequantizer_family(), {{0.3, 0.6, 0.8}});
  EXPECT_FALSE(ok.imaginary_flag);
  EXPECT_LE(ok.max_imag, 1e-15);
}

TEST(Symbol, Linearity) {
  const int dim = 20;
  const DensityMatrix a = make_state(state::Coherent{Complex(0.4, 0.3)}, dim);
  const DensityMatrix b = make_state(state::Thermal{0.6}, dim);
  std::mt19937_64 rng(11);
  const std::vector<LabelPoint> pts = random_symplectic_points(rng, 50);
  const std::vector<LabelPoint> ph = random_photon_points(rng, 50, dim - 1);
  for (double wa : {0.25, 0.8, 1.5}) {
    const double wb = 1.0 - wa;
    const OperatorMatrix mix = Complex(wa) * a.op() + Complex(wb) * b.op();
    for (const LabelPoint& x : pts) {
      const DequantizerFamily u = symplectic_dequantizer_family();
      EXPECT_LE(std::abs(symbol(mix, u, x) - (wa * symbol(a, u, x) + wb * symbol(b, u, x))), 1e-12);
    }
    for (const LabelPoint& x : ph) {
      const DequantizerFamily u = photon_dequantizer_family();
      EXPECT_LE(std::abs(symbol(mix, u, x) - (wa * symbol(a, u, x) + wb * symbol(b, u, x))), 1e-12);
    }
  }
}

TEST(Reconstruct, PhotonVacuumAndFockOne) {
  ReconstructionConfig cfg;
  const AlphaGrid grid = AlphaGrid::square(3.0, 41);
  const QuantizerFamily q = photon_quantizer_family(cfg, grid);
  const DequantizerFamily u = photon_dequantizer_family();
  for (double w : q.weights) EXPECT_GT(w, 0.0);
  EXPECT_FALSE(q.domain.empty());

  const DensityMatrix vac = make_state(state::Fock{0}, cfg.dim);
  const OperatorMatrix r0 = reconstruct(sample_symbol(vac, u, q.points), q, cfg.dim);
  EXPECT_GE(fidelity(vac, r0), 0.99);
  EXPECT_GE(r0(0, 0).real(), 0.99);

  const DensityMatrix one = make_state(state::Fock{1}, cfg.dim);
  const OperatorMatrix r1 = reconstruct(sample_symbol(one, u, q.points), q, cfg.dim);
  EXPECT_GE(r1(1, 1).real(), 0.95);
}

TEST(Reconstruct, ZeroSymbolAndUndeclaredGrid) {
  const QuantizerFamily q = symplectic_quantizer_family(4.0, 4, 4, XGrid{-3.0, 3.0, 5});
  SampledSymbol zero{q.coordinates, q.points, std::vector<Complex>(q.points.size())};
  const OperatorMatrix r = reconstruct(zero, q, 6);
  EXPECT_EQ(r.matrix().cwiseAbs().maxCoeff(), 0.0);

  SampledSymbol shifted = zero;
  shifted.points[3][0] += 1e-6;
  EXPECT_EQ(kind_of([&] { reconstruct(shifted, q, 6); }), ErrorKind::UndeclaredGrid);
  SampledSymbol shorter = zero;
  shorter.points.pop_back();
  shorter.values.pop_back();
  EXPECT_EQ(kind_of([&] { reconstruct(shorter, q, 6); }), ErrorKind::UndeclaredGrid);
  EXPECT_EQ(kind_of([&] { symplectic_quantizer_family(0.0, 4, 4, XGrid{-3.0, 3.0, 5}); }), ErrorKind::Config);
}

TEST(Reconstruct, SymplecticPairing) {
  const int dim = 8;
  const QuantizerFamily q = symplectic_quantizer_family(8.0, 32, 32, XGrid{-6.0, 6.0, 65});
  for (double w : q.weights) EXPECT_GT(w, 0.0);
  const DequantizerFamily u = symplectic_dequantizer_family();
  const DensityMatrix rho = make_state(state::Coherent{Complex(0.3, -0.2)}, dim);
  const SampledSymbol w = sample_symbol(rho, u, q.points);
  const OperatorMatrix back = reconstruct(w, q, dim);
  EXPECT_LE(max_abs_diff(back, rho.op()), 1e-6);

  // symbol -> reconstruct -> symbol on a subset of the nodes.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<size_t> pick(0, q.points.size() - 1);
  for (int k = 0; k < 50; ++k) {
    const size_t i = pick(rng);
    EXPECT_LE(std::abs(symbol(back, u, q.points[i]) - w.values[i]), 1e-6);
  }
}

TEST(StarTrace, Examples) {
  const DensityMatrix vac = make_state(state::Fock{0}, 24);
  const DensityMatrix one = make_state(state::Fock{1}, 24);
  std::mt19937_64 rng(3);
  for (const DequantizerFamily& u : {symplectic_dequantizer_family(), photon_dequantizer_family()}) {
    const std::vector<LabelPoint> pts =
        u.label == "symplectic" ? random_symplectic_points(rng, 20) : random_photon_points(rng, 20, 10);
    for (const LabelPoint& x : pts) {
      EXPECT_LE(std::abs(star_trace(vac, vac, u, x) - symbol(vac, u, x)), 1e-12);
      EXPECT_LE(std::abs(star_trace(vac, one, u, x)), 1e-15);
    }
  }
  const DensityMatrix coh = make_state(state::Coherent{1.0}, 40);
  const DensityMatrix th = make_state(state::Thermal{0.5}, 40);
  const Complex v = star_trace(coh, th, photon_dequantizer_family(), {0.0, 0.0, 0.0});
  EXPECT_NEAR(v.real(), (coh.matrix() * th.matrix())(0, 0).real(), 1e-15);
  EXPECT_NEAR(v.real(), 0.24525296078096157, 1e-12);
  EXPECT_EQ(kind_of([&] { star_trace(vac, coh, photon_dequantizer_family(), {0.0, 0.0, 0.0}); }),
            ErrorKind::DimensionMismatch);
}

TEST(StarTrace, Associativity) {
  const int dim = 16;
  const OperatorMatrix a = make_state(state::Coherent{Complex(0.5, 0.2)}, dim).op();
  const OperatorMatrix b = make_state(state::Thermal{0.7}, dim).op();
  const OperatorMatrix c = make_state(state::SqueezedVacuum{0.3}, dim).op();
  std::mt19937_64 rng(21);
  for (const LabelPoint& x : random_symplectic_points(rng, 30)) {
    const DequantizerFamily u = symplectic_dequantizer_family();
    EXPECT_LE(std::abs(star_trace(a * b, c, u, x) - star_trace(a, b * c, u, x)), 1e-12);
  }
  for (const LabelPoint& x : random_photon_points(rng, 30, dim - 1)) {
    const DequantizerFamily u = photon_dequantizer_family();
    EXPECT_LE(std::abs(star_trace(a * b, c, u, x) - star_trace(a, b * c, u, x)), 1e-12);
  }
}

TEST(StarTrace, PureStateIdempotence) {
  const int dim = 48;
  std::mt19937_64 rng(1);
  const std::vector<LabelPoint> sp = random_symplectic_points(rng, 200);
  const std::vector<LabelPoint> pp = random_photon_points(rng, 200, 20);
  for (const StateSpec& spec : {StateSpec{state::Fock{0}}, StateSpec{state::Fock{1}}, StateSpec{state::Coherent{1.0}}}) {
    const DensityMatrix rho = make_state(spec, dim);
    double worst = 0.0;
    for (const LabelPoint& x : sp) {
      const DequantizerFamily u = symplectic_dequantizer_family();
      worst = std::max(worst, std::abs(star_trace(rho, rho, u, x) - symbol(rho, u, x)));
    }
    for (const LabelPoint& x : pp) {
      const DequantizerFamily u = photon_dequantizer_family();
      worst = std::max(worst, std::abs(star_trace(rho, rho, u, x) - symbol(rho, u, x)));
    }
    EXPECT_LE(worst, 1e-12);
  }
}

TEST(Kernel, QuantumExamples) {
  const KernelValue k = kernel_symplectic_quantum({0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
  EXPECT_NEAR(std::abs(k.amplitude - kQuarterPi2), 0.0, 1e-17);
  EXPECT_EQ(k.delta_argument, 0.0);

  // nu1 mu2 = nu2 mu1 and X1 + X2 = (nu1 + nu2) X / nu.
  const SymplecticPoint x1{0.5, 1.0, 2.0};
  const SymplecticPoint x2{1.0, 0.5, 1.0};
  const SymplecticPoint x{1.0, 0.3, 2.0};
  EXPECT_NEAR(std::abs(kernel_symplectic_quantum(x1, x2, x).amplitude - kQuarterPi2), 0.0, 1e-17);

  // Swapping x1 and x2 conjugates only the antisymmetric factor.
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const SymplecticPoint a = random_point(rng);
    const SymplecticPoint b = random_point(rng);
    SymplecticPoint c = random_point(rng);
    if (std::abs(c.nu) < 0.1) c.nu = 0.5;
    const KernelValue ab = kernel_symplectic_quantum(a, b, c);
    const KernelValue ba = kernel_symplectic_quantum(b, a, c);
    const Complex anti = std::polar(1.0, 0.5 * (a.nu * b.mu - b.nu * a.mu));
    EXPECT_LE(std::abs(ab.amplitude / anti - ba.amplitude * anti), 1e-15);
    EXPECT_NEAR(ab.delta_argument, ba.delta_argument, 1e-14);
  }
}

TEST(Kernel, ClassicalExamples) {
  EXPECT_NEAR(std::abs(kernel_symplectic_classical({0.0, 0.4, 0.7}, {0.0, -1.0, 0.2}, {0.0, 0.5, 1.5}).amplitude -
                       kQuarterPi2),
              0.0, 1e-17);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    const SymplecticPoint a = random_point(rng);
    const SymplecticPoint b = random_point(rng);
    SymplecticPoint c = random_point(rng);
    if (std::abs(c.nu) < 0.1) c.nu = -0.5;
    const KernelValue ab = kernel_symplectic_classical(a, b, c);
    const KernelValue ba = kernel_symplectic_classical(b, a, c);
    EXPECT_EQ(ab.amplitude, ba.amplitude);
    EXPECT_EQ(ab.delta_argument, ba.delta_argument);
    const KernelValue q = kernel_symplectic_quantum(a, b, c);
    EXPECT_NEAR(ab.delta_argument, -q.delta_argument, 1e-14);
    EXPECT_TRUE(same_support(ab, q));
  }
}

TEST(Kernel, RelationExamples) {
  const SymplecticPoint x1{0.3, 0.0, 1.2};
  const SymplecticPoint x2{-0.4, 0.9, 0.0};
  const Complex r = kernel_relation_check(x1, x2, {0.2, 0.5, 0.8});
  EXPECT_LE(std::abs(r - std::polar(1.0, 0.5 * 0.9 * 1.2)), 1e-14);
  const SymplecticPoint same{0.7, -1.1, 0.6};
  EXPECT_LE(std::abs(kernel_relation_check(same, same, {1.0, 0.4, -0.9}) - 1.0), 1e-14);
}

TEST(Kernel, RelationSweep) {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    SymplecticPoint a = random_point(rng);
    SymplecticPoint b = random_point(rng);
    SymplecticPoint c = random_point(rng);
    if (std::abs(c.nu) < 0.1) c.nu = c.nu < 0.0 ? -0.1 : 0.1;
    worst = std::max(worst, std::abs(kernel_relation_check(a, b, c) - kernel_relation_phase(a, b)));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Kernel, SingularSlice) {
  EXPECT_EQ(kind_of([] { kernel_symplectic_quantum({}, {}, {0.0, 1.0, 0.0}); }), ErrorKind::SingularSlice);
  EXPECT_EQ(kind_of([] { kernel_symplectic_classical({}, {}, {0.0, 1.0, 0.0}); }), ErrorKind::SingularSlice);
  EXPECT_EQ(kind_of([] { kernel_relation_check({}, {}, {0.0, 1.0, 0.0}); }), ErrorKind::SingularSlice);
}
