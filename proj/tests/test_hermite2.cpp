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
#include <random>

#include "oracles.hpp"
#include "tomokit/error.hpp"
#include "tomokit/hermite2.hpp"

using namespace tomokit;
using C = std::complex<double>;

namespace {

Eigen::Matrix2cd sym(C r11, C r12, C r22) {
  Eigen::Matrix2cd r;
  r << r11, r12, r12, r22;
  return r;
}

// Fixed arguments whose derivatives were taken symbolically from the generating function.
const Eigen::Matrix2cd kR = sym(C(0.3, 0.1), C(-0.2, 0.4), C(0.5, -0.3));
const C kY1(0.7, -0.2);
const C kY2(-0.4, 0.6);

}  // namespace

TEST(Hermite2, LowOrders) {
  HermiteContext ctx(kR);
  EXPECT_EQ(hermite2(ctx, 0, 0, kY1, kY2), C(1.0, 0.0));
  const C u1 = kR(0, 0) * kY1 + kR(0, 1) * kY2;
  const C u2 = kR(1, 0) * kY1 + kR(1, 1) * kY2;
  EXPECT_LE(std::abs(hermite2(ctx, 1, 0, kY1, kY2) - u1), 1e-15);
  EXPECT_LE(std::abs(hermite2(ctx, 0, 1, kY1, kY2) - u2), 1e-15);
  EXPECT_LE(std::abs(hermite2(ctx, 1, 1, kY1, kY2) - (u1 * u2 - kR(0, 1))), 1e-15);
}

TEST(Hermite2, FrozenSeriesCoefficients) {
  HermiteContext ctx(kR);
  EXPECT_LE(std::abs(hermite2(ctx, 2, 1, kY1, kY2) - C(-0.056588, -0.425296)), 1e-14);
  EXPECT_LE(std::abs(hermite2(ctx, 3, 3, kY1, kY2) - C(0.714502564432, -1.801958647376)), 1e-13);
  EXPECT_LE(std::abs(hermite2(ctx, 0, 4, kY1, kY2) - C(2.59559888, -1.39080384)), 1e-13);
}

TEST(Hermite2, MatchesSeriesOracle) {
  std::mt19937_64 rng(20260118);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto draw = [&] {
    // |entry| <= 1
    return std::polar(std::abs(u(rng)), M_PI * u(rng));
  };
  const int order = 6;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Matrix2cd r = sym(draw(), draw(), draw());
    const C y1 = draw();
    const C y2 = draw();
    const auto series = oracle::hermite_series(r, y1, y2, order);
    HermiteContext ctx(r);
    for (int n1 = 0; n1 <= order; ++n1) {
      for (int n2 = 0; n1 + n2 <= order; ++n2) {
        const C expected = series[n1][n2];
        const C got = hermite2(ctx, n1, n2, y1, y2);
        EXPECT_LE(std::abs(got - expected), 1e-9 * std::abs(expected) + 1e-13) << trial << ": " << n1 << "," << n2;
      }
    }
  }
}

TEST(Hermite2, IndexSwapSymmetry) {
  const Eigen::Matrix2cd swapped = sym(kR(1, 1), kR(0, 1), kR(0, 0));
  HermiteContext a(kR);
  HermiteContext b(swapped);
  for (int n1 = 0; n1 <= 8; ++n1) {
    for (int n2 = 0; n2 <= 8; ++n2) {
      const C h = hermite2(a, n1, n2, kY1, kY2);
      const C g = hermite2(b, n2, n1, kY2, kY1);
      EXPECT_LE(std::abs(h - g), 1e-12 * std::max(1.0, std::abs(h)));
    }
  }
}

TEST(Hermite2, TableReproducibleAfterArgumentChange) {
  HermiteContext ctx(kR);
  const C first = hermite2(ctx, 5, 4, kY1, kY2);
  hermite2(ctx, 9, 9, C(0.1, 0.1), C(0.2, -0.3));
  EXPECT_EQ(hermite2(ctx, 5, 4, kY1, kY2), first);
  HermiteContext fresh(kR);
  EXPECT_EQ(hermite2(fresh, 5, 4, kY1, kY2), first);
}

TEST(Hermite2, LargeIndicesStayRepresentable) {
  HermiteContext ctx(sym(0.0, -1.0 / 3.0, 0.0));
  const ScaledComplex h = ctx.scaled(300, 300, C(30.0, 0.0), C(30.0, 0.0));
  EXPECT_FALSE(h.is_zero());
  EXPECT_TRUE(std::isfinite(h.log_abs()));
  EXPECT_GT(h.log_abs(), std::log(1e300));
}

TEST(Hermite2, Errors) {
  HermiteContext ctx(kR);
  EXPECT_THROW(hermite2(ctx, -1, 0, kY1, kY2), Error);
  Eigen::Matrix2cd bad = kR;
  bad(1, 0) += 1e-9;
  try {
    HermiteContext c(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(ScaledComplex, ArithmeticAndRange) {
  const ScaledComplex a(C(3.0, -4.0));
  EXPECT_EQ(a.value(), C(3.0, -4.0));
  EXPECT_NEAR(a.log_abs(), std::log(5.0), 1e-15);
  EXPECT_EQ((a + a).value(), C(6.0, -8.0));
  EXPECT_EQ((a - a).value(), C(0.0, 0.0));
  EXPECT_TRUE(ScaledComplex().is_zero());
  ScaledComplex big(C(1.0, 0.0));
  for (int k = 0; k < 40; ++k) big = 1e100 * big;
  EXPECT_NEAR(big.log_abs(), 4000.0 * std::log(10.0), 1e-9);
  const double m = std::max(std::abs(big.mantissa().real()), std::abs(big.mantissa().imag()));
  EXPECT_GE(m, 0.5);
  EXPECT_LT(m, 1.0);
}
