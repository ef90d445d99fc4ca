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

#ifndef TOMOKIT_HERMITE2_HPP
#define TOMOKIT_HERMITE2_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace tomokit {

/// Complex number stored as mantissa * 2^exponent so that lattice values far beyond the double
/// range stay representable. The mantissa is normalized to max(|re|, |im|) in [0.5, 1).
class ScaledComplex {
 public:
  ScaledComplex() = default;
  explicit ScaledComplex(std::complex<double> v) : mantissa_(v) { normalize(); }

  std::complex<double> mantissa() const { return mantissa_; }
  int exponent() const { return exponent_; }
  bool is_zero() const { return mantissa_ == std::complex<double>(0.0, 0.0); }

  /// Plain double value; overflows to inf when the exponent is out of range.
  std::complex<double> value() const;
  /// log |value|; -inf for zero.
  double log_abs() const;

  friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator*(std::complex<double> s, const ScaledComplex& a);

 private:
  void normalize();

  std::complex<double> mantissa_{0.0, 0.0};
  int exponent_ = 0;
};

/// Two-variable Hermite polynomials H^R_{n1 n2}(y1, y2), defined by
///
///   exp(-x^T R x / 2 + y^T R x) = sum_{n1,n2} x1^n1 x2^n2 / (n1! n2!) H^R_{n1 n2}(y1, y2),
///
/// evaluated by the lattice recursions obtained from d/dx1 and d/dx2 of the generating function.
/// The memo table is tied to one (y1, y2) pair and rebuilt when the arguments change, so a context
/// must not be shared between threads.
class HermiteContext {
 public:
  using Matrix2 = Eigen::Matrix2cd;

  /// Throws ErrorKind::Domain unless R(0,1) == R(1,0) exactly.
  explicit HermiteContext(const Matrix2& r);

  const Matrix2& r() const { return r_; }

  ScaledComplex scaled(int n1, int n2, std::complex<double> y1, std::complex<double> y2);
  std::complex<double> value(int n1, int n2, std::complex<double> y1, std::complex<double> y2) {
    return scaled(n1, n2, y1, y2).value();
  }

  int table_rows() const { return rows_; }
  int table_cols() const { return cols_; }

 private:
  void reset(std::complex<double> y1, std::complex<double> y2);
  void grow(int n1, int n2);
  ScaledComplex& at(int n1, int n2) { return table_[static_cast<size_t>(n1) * cols_ + n2]; }

  Matrix2 r_;
  std::complex<double> y1_{0.0, 0.0};
  std::complex<double> y2_{0.0, 0.0};
  bool primed_ = false;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<ScaledComplex> table_;
};

/// H^R_{n1 n2}(y1, y2). Throws ErrorKind::Domain for negative indices.
std::complex<double> hermite2(HermiteContext& ctx, int n1, int n2, std::complex<double> y1,
                              std::complex<double> y2);

}  // namespace tomokit

#endif  // TOMOKIT_HERMITE2_HPP
