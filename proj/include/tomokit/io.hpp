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

#ifndef TOMOKIT_IO_HPP
#define TOMOKIT_IO_HPP

#include <iosfwd>
#include <string>

#include "tomokit/fock.hpp"
#include "tomokit/gaussian.hpp"
#include "tomokit/photon_number.hpp"
#include "tomokit/star_product.hpp"
#include "tomokit/symplectic.hpp"

namespace tomokit {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

/// {"dim": N, "re": [[...]], "im": [[...]]}
std::string density_to_json(const OperatorMatrix& op);
OperatorMatrix operator_from_json(const std::string& text);
DensityMatrix density_from_json(const std::string& text);

/// {"mean_q", "mean_p", "sigma_qq", "sigma_pp", "sigma_pq"}
std::string gaussian_to_json(const GaussianState& g);
GaussianState gaussian_from_json(const std::string& text);

/// Header: label coordinates then "value", or "re,im" when any sample is complex.
void write_symbol_csv(std::ostream& out, const SampledSymbol& s);
SampledSymbol read_symbol_csv(std::istream& in);

/// Columns X, mu, nu, w; frame-major rows.
void write_tomogram_csv(std::ostream& out, const SymplecticTomogram& t);
SymplecticTomogram read_tomogram_csv(std::istream& in);

/// Columns n, re_alpha, im_alpha, omega.
void write_photon_csv(std::ostream& out, const PhotonTomogram& t);
PhotonTomogram read_photon_csv(std::istream& in);

/// First line: JSON header with ranges, counts, steps and "convention" ("unit-integral" | "two-pi");
/// then one CSV line of p-values per q.
void write_grid(std::ostream& out, const PhaseSpaceGrid& g);
PhaseSpaceGrid read_grid(std::istream& in);

}  // namespace tomokit

#endif  // TOMOKIT_IO_HPP
