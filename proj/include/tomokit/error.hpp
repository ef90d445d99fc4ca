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

#ifndef TOMOKIT_ERROR_HPP
#define TOMOKIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tomokit {

enum class ErrorKind {
  InvalidDimension,
  DimensionMismatch,
  Domain,
  SingularSlice,
  DegenerateFrame,
  SingularDenominator,
  SingularCovariance,
  Unsupported,
  Divergence,
  UndeclaredGrid,
  Format,
  Config,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-checkable category.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::SingularSlice: return "singular-slice";
    case ErrorKind::DegenerateFrame: return "degenerate-frame";
    case ErrorKind::SingularDenominator: return "singular-denominator";
    case ErrorKind::SingularCovariance: return "singular-covariance";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::UndeclaredGrid: return "undeclared-grid";
    case ErrorKind::Format: return "format";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace tomokit

#endif  // TOMOKIT_ERROR_HPP
