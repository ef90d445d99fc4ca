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

#ifndef TOMOKIT_CLI_HPP
#define TOMOKIT_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tomokit/fock.hpp"
#include "tomokit/gaussian.hpp"
#include "tomokit/symplectic.hpp"

namespace tomokit::cli {

enum ExitCode : int { kOk = 0, kInvariantFailure = 1, kConfigError = 2, kContractViolation = 3 };

/// vacuum | fock:n | coherent:re[:im] | thermal:nbar | squeezed:r
struct StateArg {
  std::string text;
  StateSpec spec;
  std::optional<GaussianState> gaussian;
};

StateArg parse_state(const std::string& text);

/// "min:max:count"
XGrid parse_range(const std::string& text);

struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// kernels | homogeneity | gaussian-branch | roundtrips | all
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

/// Entry point; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tomokit::cli

#endif  // TOMOKIT_CLI_HPP
