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

#include "tomokit/hermite2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tomokit/error.hpp"

namespace tomokit {

void ScaledComplex::normalize() {
  const double big = std::max(std::abs(mantissa_.real()), std::abs(mantissa_.imag()));
  if (big == 0.0) {
    mantissa_ = {0.0, 0.0};
    exponent_ = 0;
    return;
  }
  int e = 0;
  std::frexp(big, &e);
  mantissa_ = {std::ldexp(mantissa_.real(), -e), std::ldexp(mantissa_.imag(), -e)};
  exponent_ += e;
}

std::complex<double> ScaledComplex::value() const {
  return {std::ldexp(mantissa_.real(), exponent_), std::ldexp(mantissa_.imag(), exponent_)};
}

double ScaledComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(mantissa_)) + exponent_ * std::log(2.0);
}

ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int e = std::max(a.exponent_, b.exponent_);
  const auto shift = [e](const ScaledComplex& s) {
    return std::complex<double>(std::ldexp(s.mantissa_.real(), s.exponent_ - e),
                                std::ldexp(s.mantissa_.imag(), s.exponent_ - e));
  };
  ScaledComplex r;
  r.mantissa_ = shift(a) + shift(b);
  r.exponent_ = e;
  r.normalize();
  return r;
}

ScaledComplex operator*(std::complex<double> s, const ScaledComplex& a) {
  ScaledComplex r;
  r.mantissa_ = s * a.mantissa_;
  r.exponent_ = a.exponent_;
  r.normalize();
  return r;
}

ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) { return a + (-1.0) * b; }

HermiteContext::HermiteContext(const Matrix2& r) : r_(r) {
  if (r(0, 1) != r(1, 0)) throw Error(ErrorKind::Domain, "Hermite R matrix must be symmetric");
}

void HermiteContext::reset(std::complex<double> y1, std::complex<double> y2) {
  y1_ = y1;
  y2_ = y2;
  primed_ = true;
  rows_ = 1;
  cols_ = 1;
  table_.assign(1, ScaledComplex(1.0));
}

void HermiteContext::grow(int n1, int n2) {
  const int new_rows = std::max(rows_, n1 + 1);
  const int new_cols = std::max(cols_, n2 + 1);
  if (new_rows == rows_ && new_cols == cols_) return;

  std::vector<ScaledComplex> old = std::move(table_);
  const int old_rows = rows_;
  const int old_cols = cols_;
  table_.assign(static_cast<size_t>(new_rows) * new_cols, ScaledComplex());
  rows_ = new_rows;
  cols_ = new_cols;
  for (int i = 0; i < old_rows; ++i)
    for (int j = 0; j < old_cols; ++j) at(i, j) = old[static_cast<size_t>(i) * old_cols + j];

  const std::complex<double> u1 = r_(0, 0) * y1_ + r_(0, 1) * y2_;
  const std::complex<double> u2 = r_(1, 0) * y1_ + r_(1, 1) * y2_;

  // Column n2 = 0 by the n1 recursion, then every row is extended in n2:
  //   H_{i+1,j} = u1 H_{i,j} - i R11 H_{i-1,j} - j R12 H_{i,j-1}
  //   H_{i,j+1} = u2 H_{i,j} - i R21 H_{i-1,j} - j R22 H_{i,j-1}
  for (int i = old_rows; i < rows_; ++i) {
    ScaledComplex v = u1 * at(i - 1, 0);
    if (i >= 2) v = v - static_cast<double>(i - 1) * r_(0, 0) * at(i - 2, 0);
    at(i, 0) = v;
  }
  for (int i = 0; i < rows_; ++i) {
    const int start = (i < old_rows) ? old_cols : 1;
    for (int j = start; j < cols_; ++j) {
      ScaledComplex v = u2 * at(i, j - 1);
      if (i >= 1) v = v - static_cast<double>(i) * r_(1, 0) * at(i - 1, j - 1);
      if (j >= 2) v = v - static_cast<double>(j - 1) * r_(1, 1) * at(i, j - 2);
      at(i, j) = v;
    }
  }
}

ScaledComplex HermiteContext::scaled(int n1, int n2, std::complex<double> y1, std::complex<double> y2) {
  if (n1 < 0 || n2 < 0) {
    throw Error(ErrorKind::Domain, "Hermite indices must be nonnegative, got (" + std::to_string(n1) + ", " +
                                       std::to_string(n2) + ")");
  }
  if (!primed_ || y1 != y1_ || y2 != y2_) reset(y1, y2);
  grow(n1, n2);
  return at(n1, n2);
}

std::complex<double> hermite2(HermiteContext& ctx, int n1, int n2, std::complex<double> y1,
                              std::complex<double> y2) {
  return ctx.value(n1, n2, y1, y2);
}

}  // namespace tomokit
