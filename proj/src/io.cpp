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

#include "tomokit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tomokit/error.hpp"

namespace tomokit {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Format, std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw Error(ErrorKind::Format, std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::Format, std::string("field '") + name + "' has the wrong type");
  }
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, size_t line) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::Format, "line " + std::to_string(line) + ": not a number '" + s + "'");
  }
  return v;
}

// Columns of a CSV file with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  size_t column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorKind::Format, "missing column '" + name + "'");
    return static_cast<size_t>(it - header.begin());
  }
};

Table read_table(std::istream& in) {
  Table t;
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (t.header.empty()) {
      t.header = cells;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw Error(ErrorKind::Format, "line " + std::to_string(n) + ": expected " + std::to_string(t.header.size()) +
                                         " columns, found " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c, n));
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw Error(ErrorKind::Format, "empty file");
  return t;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

// Sorted distinct values, checked to form a uniform grid.
std::vector<double> uniform_axis(std::vector<double> values, const char* name) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end(), close), values.end());
  if (values.size() >= 3) {
    const double step = (values.back() - values.front()) / (values.size() - 1);
    for (size_t i = 0; i < values.size(); ++i) {
      if (!close(values[i], values.front() + i * step)) {
        throw Error(ErrorKind::Format, std::string("column '") + name + "' is not a uniform grid");
      }
    }
  }
  return values;
}

size_t axis_index(const std::vector<double>& axis, double v, const char* name) {
  auto it = std::lower_bound(axis.begin(), axis.end(), v, [](double a, double b) { return a < b && !close(a, b); });
  if (it == axis.end() || !close(*it, v)) throw Error(ErrorKind::Format, std::string("value off the '") + name + "' grid");
  return static_cast<size_t>(it - axis.begin());
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string density_to_json(const OperatorMatrix& op) {
  json re = json::array();
  json im = json::array();
  for (int r = 0; r < op.dim(); ++r) {
    json rr = json::array();
    json ii = json::array();
    for (int c = 0; c < op.dim(); ++c) {
      rr.push_back(op(r, c).real());
      ii.push_back(op(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return json{{"dim", op.dim()}, {"re", re}, {"im", im}}.dump();
}

OperatorMatrix operator_from_json(const std::string& text) {
  const json j = parse_json(text);
  const int dim = field<int>(j, "dim");
  const auto re = field<std::vector<std::vector<double>>>(j, "re");
  const auto im = field<std::vector<std::vector<double>>>(j, "im");
  if (dim < 2) throw Error(ErrorKind::InvalidDimension, "dim must be >= 2");
  if (static_cast<int>(re.size()) != dim || static_cast<int>(im.size()) != dim) {
    throw Error(ErrorKind::Format, "re/im must have dim rows");
  }
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (static_cast<int>(re[r].size()) != dim || static_cast<int>(im[r].size()) != dim) {
      throw Error(ErrorKind::Format, "row " + std::to_string(r) + " must have dim entries");
    }
    for (int c = 0; c < dim; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
  }
  return OperatorMatrix(std::move(m));
}

DensityMatrix density_from_json(const std::string& text) { return DensityMatrix::from_operator(operator_from_json(text)); }

std::string gaussian_to_json(const GaussianState& g) {
  return json{{"mean_q", g.mean_q}, {"mean_p", g.mean_p}, {"sigma_qq", g.sigma_qq}, {"sigma_pp", g.sigma_pp},
              {"sigma_pq", g.sigma_pq}}
      .dump();
}

GaussianState gaussian_from_json(const std::string& text) {
  const json j = parse_json(text);
  GaussianState g;
  g.mean_q = field<double>(j, "mean_q");
  g.mean_p = field<double>(j, "mean_p");
  g.sigma_qq = field<double>(j, "sigma_qq");
  g.sigma_pp = field<double>(j, "sigma_pp");
  g.sigma_pq = field<double>(j, "sigma_pq");
  return g;
}

void write_symbol_csv(std::ostream& out, const SampledSymbol& s) {
  bool complex_values = false;
  for (const Complex& v : s.values) complex_values |= v.imag() != 0.0;
  for (const auto& c : s.coordinates) out << c << ',';
  out << (complex_values ? "re,im" : "value") << '\n';
  for (size_t i = 0; i < s.points.size(); ++i) {
    for (double x : s.points[i]) out << format_double(x) << ',';
    out << format_double(s.values[i].real());
    if (complex_values) out << ',' << format_double(s.values[i].imag());
    out << '\n';
  }
}

SampledSymbol read_symbol_csv(std::istream& in) {
  const Table t = read_table(in);
  SampledSymbol s;
  const bool complex_values = std::find(t.header.begin(), t.header.end(), "im") != t.header.end();
  const size_t value_col = complex_values ? t.column("re") : t.column("value");
  const size_t n_coords = complex_values ? t.header.size() - 2 : t.header.size() - 1;
  if (value_col != n_coords) throw Error(ErrorKind::Format, "symbol value must be the final column(s)");
  s.coordinates.assign(t.header.begin(), t.header.begin() + n_coords);
  for (const auto& row : t.rows) {
    s.points.emplace_back(row.begin(), row.begin() + n_coords);
    s.values.emplace_back(row[n_coords], complex_values ? row[n_coords + 1] : 0.0);
    s.max_imag = std::max(s.max_imag, std::abs(s.values.back().imag()));
  }
  return s;
}

void write_tomogram_csv(std::ostream& out, const SymplecticTomogram& t) {
  out << "X,mu,nu,w\n";
  for (size_t k = 0; k < t.frames.size(); ++k) {
    const std::string frame = format_double(t.frames[k].mu) + ',' + format_double(t.frames[k].nu) + ',';
    for (int i = 0; i < t.x.count; ++i) out << format_double(t.x.at(i)) << ',' << frame << format_double(t.at(k, i)) << '\n';
  }
}

SymplecticTomogram read_tomogram_csv(std::istream& in) {
  const Table t = read_table(in);
  const size_t cx = t.column("X");
  const size_t cm = t.column("mu");
  const size_t cn = t.column("nu");
  const size_t cw = t.column("w");
  if (t.rows.empty()) throw Error(ErrorKind::Format, "tomogram file has no rows");

  SymplecticTomogram out;
  std::vector<std::vector<double>> xs;
  for (const auto& row : t.rows) {
    if (out.frames.empty() || row[cm] != out.frames.back().mu || row[cn] != out.frames.back().nu) {
      out.frames.push_back(Frame{row[cm], row[cn]});
      xs.emplace_back();
    }
    xs.back().push_back(row[cx]);
    out.samples.push_back(row[cw]);
  }
  const std::vector<double>& x0 = xs.front();
  if (x0.size() < 2) throw Error(ErrorKind::Format, "each frame needs >= 2 X samples");
  out.x = XGrid{x0.front(), x0.back(), static_cast<int>(x0.size())};
  for (const auto& x : xs) {
    if (x.size() != x0.size()) throw Error(ErrorKind::Format, "frames have different X sample counts");
    for (size_t i = 0; i < x.size(); ++i) {
      if (!close(x[i], out.x.at(static_cast<int>(i)))) throw Error(ErrorKind::Format, "X samples are not a shared uniform grid");
    }
  }
  return out;
}

void write_photon_csv(std::ostream& out, const PhotonTomogram& t) {
  out << "n,re_alpha,im_alpha,omega\n";
  const AlphaGrid& g = t.grid();
  for (int i = 0; i < g.re_count; ++i) {
    for (int j = 0; j < g.im_count; ++j) {
      const Complex a = g.at(i, j);
      const std::string alpha = format_double(a.real()) + ',' + format_double(a.imag()) + ',';
      for (int n = 0; n <= t.n_max(); ++n) out << n << ',' << alpha << format_double(t.at(n, i, j)) << '\n';
    }
  }
}

PhotonTomogram read_photon_csv(std::istream& in) {
  const Table t = read_table(in);
  const size_t cn = t.column("n");
  const size_t cr = t.column("re_alpha");
  const size_t ci = t.column("im_alpha");
  const size_t co = t.column("omega");
  if (t.rows.empty()) throw Error(ErrorKind::Format, "photon tomogram file has no rows");
  std::vector<double> re;
  std::vector<double> im;
  int n_max = 0;
  for (const auto& row : t.rows) {
    if (row[cn] < 0.0 || row[cn] != std::floor(row[cn])) throw Error(ErrorKind::Format, "column 'n' must hold nonnegative integers");
    n_max = std::max(n_max, static_cast<int>(row[cn]));
    re.push_back(row[cr]);
    im.push_back(row[ci]);
  }
  const std::vector<double> re_axis = uniform_axis(re, "re_alpha");
  const std::vector<double> im_axis = uniform_axis(im, "im_alpha");
  const AlphaGrid grid{re_axis.front(), re_axis.back(), static_cast<int>(re_axis.size()), im_axis.front(), im_axis.back(),
                       static_cast<int>(im_axis.size())};
  PhotonTomogram out(n_max, grid);
  std::vector<char> seen(static_cast<size_t>(grid.size()) * (n_max + 1), 0);
  for (const auto& row : t.rows) {
    const int n = static_cast<int>(row[cn]);
    const size_t i = axis_index(re_axis, row[cr], "re_alpha");
    const size_t j = axis_index(im_axis, row[ci], "im_alpha");
    out.at(n, static_cast<int>(i), static_cast<int>(j)) = row[co];
    seen[(i * grid.im_count + j) * (n_max + 1) + n] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw Error(ErrorKind::Format, "photon tomogram grid is incomplete");
  return out;
}

void write_grid(std::ostream& out, const PhaseSpaceGrid& g) {
  const Grid2D& d = g.grid;
  const json header{{"q_min", d.q_min}, {"q_max", d.q_max}, {"q_count", d.q_count}, {"q_step", d.q_step()},
                    {"p_min", d.p_min}, {"p_max", d.p_max}, {"p_count", d.p_count}, {"p_step", d.p_step()},
                    {"convention", g.norm == Normalization::TwoPi ? "two-pi" : "unit-integral"}};
  out << header.dump() << '\n';
  for (int i = 0; i < d.q_count; ++i) {
    for (int j = 0; j < d.p_count; ++j) out << (j ? "," : "") << format_double(g.at(i, j));
    out << '\n';
  }
}

PhaseSpaceGrid read_grid(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Format, "empty grid file");
  const json h = parse_json(line);
  PhaseSpaceGrid g;
  g.grid = Grid2D{field<double>(h, "q_min"), field<double>(h, "q_max"), field<int>(h, "q_count"),
                  field<double>(h, "p_min"), field<double>(h, "p_max"), field<int>(h, "p_count")};
  const std::string conv = field<std::string>(h, "convention");
  if (conv == "two-pi") {
    g.norm = Normalization::TwoPi;
  } else if (conv == "unit-integral") {
    g.norm = Normalization::UnitIntegral;
  } else {
    throw Error(ErrorKind::Format, "unknown convention '" + conv + "'");
  }
  if (g.grid.q_count < 2 || g.grid.p_count < 2) throw Error(ErrorKind::Format, "grid needs >= 2 points per axis");
  size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (static_cast<int>(cells.size()) != g.grid.p_count) {
      throw Error(ErrorKind::Format, "line " + std::to_string(n) + ": expected " + std::to_string(g.grid.p_count) + " values");
    }
    for (const auto& c : cells) g.values.push_back(parse_number(c, n));
  }
  if (g.values.size() != g.grid.size()) throw Error(ErrorKind::Format, "grid payload has the wrong number of rows");
  return g;
}

}  // namespace tomokit
