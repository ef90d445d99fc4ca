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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "tomokit/error.hpp"
#include "tomokit/io.hpp"
#include "tomokit/photon_number.hpp"
#include "tomokit/star_product.hpp"
#include "tomokit/symplectic.hpp"

namespace tomokit::cli {

using Json = nlohmann::ordered_json;

namespace {

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::Config, "cannot read " + what + " from '" + s + "'");
}

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> parts;
  std::string cell;
  std::istringstream ss(s);
  while (std::getline(ss, cell, ':')) parts.push_back(cell);
  return parts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Config, "cannot write '" + path + "'");
  out << text;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Divergence:
    case ErrorKind::SingularDenominator:
    case ErrorKind::SingularSlice:
      return kContractViolation;
    default:
      return kConfigError;
  }
}

// The exact Wigner function of a state argument: Gaussian formula when available.
std::function<double(PhasePoint)> reference_wigner(const StateArg& s, int dim) {
  if (s.gaussian) {
    const GaussianState g = *s.gaussian;
    return [g](PhasePoint p) { return wigner_eval(g, p); };
  }
  auto rho = std::make_shared<DensityMatrix>(make_state(s.spec, dim));
  return [rho](PhasePoint p) { return wigner_from_fock(*rho, p); };
}

}  // namespace

StateArg parse_state(const std::string& text) {
  const std::vector<std::string> parts = split_colon(text);
  if (parts.empty()) throw Error(ErrorKind::Config, "empty state specification");
  const std::string& kind = parts[0];
  const auto arg = [&](size_t i) {
    if (i >= parts.size()) throw Error(ErrorKind::Config, "state '" + text + "' is missing a parameter");
    return parse_double(parts[i], "state parameter");
  };
  StateArg s{text, state::Fock{0}, std::nullopt};
  if (kind == "vacuum" && parts.size() == 1) {
    s.gaussian = GaussianState::vacuum();
  } else if (kind == "fock" && parts.size() == 2) {
    const double n = arg(1);
    if (n < 0 || n != std::floor(n)) throw Error(ErrorKind::Config, "fock:n needs a nonnegative integer n");
    s.spec = state::Fock{static_cast<int>(n)};
    if (n == 0) s.gaussian = GaussianState::vacuum();
  } else if (kind == "coherent" && (parts.size() == 2 || parts.size() == 3)) {
    const Complex a(arg(1), parts.size() == 3 ? arg(2) : 0.0);
    s.spec = state::Coherent{a};
    s.gaussian = GaussianState::coherent(a);
  } else if (kind == "thermal" && parts.size() == 2) {
    const double nbar = arg(1);
    if (nbar < 0) throw Error(ErrorKind::Config, "thermal:nbar needs nbar >= 0");
    s.spec = state::Thermal{nbar};
    s.gaussian = GaussianState::thermal(nbar);
  } else if (kind == "squeezed" && parts.size() == 2) {
    const double r = arg(1);
    s.spec = state::SqueezedVacuum{r};
    s.gaussian = GaussianState::squeezed_vacuum(r);
  } else {
    throw Error(ErrorKind::Config, "unknown state '" + text + "' (vacuum, fock:n, coherent:re[:im], thermal:nbar, squeezed:r)");
  }
  return s;
}

XGrid parse_range(const std::string& text) {
  const std::vector<std::string> parts = split_colon(text);
  if (parts.size() != 3) throw Error(ErrorKind::Config, "range '" + text + "' must be min:max:count");
  const double lo = parse_double(parts[0], "range minimum");
  const double hi = parse_double(parts[1], "range maximum");
  const double count = parse_double(parts[2], "range count");
  if (!(hi > lo)) throw Error(ErrorKind::Config, "range '" + text + "' needs max > min");
  if (count < 2 || count != std::floor(count)) throw Error(ErrorKind::Config, "range '" + text + "' needs an integer count >= 2");
  return XGrid{lo, hi, static_cast<int>(count)};
}

// ---------------------------------------------------------------------------------------------
// Verification suites

namespace {

void add(std::vector<CheckResult>& out, const std::string& suite, const std::string& name, double measured, double tol,
         bool lower_bound = false) {
  const bool ok = lower_bound ? measured >= tol : measured <= tol;
  out.push_back(CheckResult{suite, name, measured, tol, ok && std::isfinite(measured)});
}

void suite_kernels(std::vector<CheckResult>& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0.0;
  int done = 0;
  while (done < 1000) {
    const SymplecticPoint x1{u(rng), u(rng), u(rng)};
    const SymplecticPoint x2{u(rng), u(rng), u(rng)};
    const SymplecticPoint x{u(rng), u(rng), u(rng)};
    if (std::abs(x.nu) < 0.1) continue;
    worst = std::max(worst, std::abs(kernel_relation_check(x1, x2, x) - kernel_relation_phase(x1, x2)));
    ++done;
  }
  add(out, "kernels", "kernel relation, 1000 points", worst, 1e-12);
}

std::vector<std::pair<std::string, DensityMatrix>> fixture_states(int dim) {
  return {{"vacuum", make_state(state::Fock{0}, dim)},
          {"fock:1", make_state(state::Fock{1}, dim)},
          {"coherent:1:0.5", make_state(state::Coherent{Complex(1.0, 0.5)}, dim)},
          {"thermal:0.5", make_state(state::Thermal{0.5}, dim)},
          {"squeezed:0.3", make_state(state::SqueezedVacuum{0.3}, dim)}};
}

void suite_homogeneity(std::vector<CheckResult>& out) {
  for (const auto& [name, rho] : fixture_states(64)) {
    const TomogramFn w = [&rho](double X, double mu, double nu) { return tomogram_from_fock(rho, X, mu, nu); };
    const TomogramReport r = validate_tomogram(w);
    add(out, "homogeneity", name + " negativity", r.max_negativity, 1e-12);
    add(out, "homogeneity", name + " normalization", r.max_normalization_error, 1e-6);
    const TomogramCheckSpec spec;
    for (size_t k = 0; k < r.homogeneity_residuals.size(); ++k) {
      add(out, "homogeneity", name + " lambda=" + format_double(spec.lambdas[k]), r.homogeneity_residuals[k], 1e-8);
    }
  }
}

void suite_gaussian_branch(std::vector<CheckResult>& out) {
  const std::vector<std::pair<std::string, GaussianState>> states{
      {"thermal:0.3", GaussianState::thermal(0.3)},
      {"thermal:0.5", GaussianState::thermal(0.5)},
      {"thermal:1", GaussianState::thermal(1.0)},
      {"squeezed:0.2", GaussianState::squeezed_vacuum(0.2)},
      {"squeezed:0.4", GaussianState::squeezed_vacuum(0.4)},
      {"displaced thermal 0.5 at 0.6-0.4i", GaussianState::squeezed_thermal(0.5, 0.0, Complex(0.6, -0.4))}};
  std::vector<Complex> alphas{0.0};
  for (double radius : {0.5, 1.0, 1.5}) {
    for (int k = 0; k < 8; ++k) alphas.push_back(std::polar(radius, kPi * k / 4.0));
  }
  const int n_max = 25;
  for (const auto& [name, g] : states) {
    const DensityMatrix rho = to_fock(g, 96);
    double worst = 0.0;
    for (const Complex a : alphas) {
      const std::vector<double> matrix = pn_distribution(rho, n_max, a);
      for (int n = 0; n <= n_max; ++n) worst = std::max(worst, std::abs(pn_tomogram_gaussian(g, n, a).value - matrix[n]));
    }
    add(out, "gaussian-branch", name, worst, 1e-6);
  }
}

void suite_roundtrips(std::vector<CheckResult>& out, std::uint64_t seed) {
  // Photon-number reconstruction.
  ReconstructionConfig cfg;
  const AlphaGrid grid = AlphaGrid::square(cfg.disk_radius, 41);
  for (const auto& [name, spec] : std::vector<std::pair<std::string, StateSpec>>{
           {"vacuum", state::Fock{0}}, {"thermal:0.3", state::Thermal{0.3}}, {"coherent:0.8", state::Coherent{0.8}}}) {
    const DensityMatrix rho = make_state(spec, cfg.dim);
    const PhotonReconstruction rec = pn_reconstruct(pn_tomogram_grid(rho, cfg.n_max, grid), cfg);
    add(out, "roundtrips", "photon reconstruction fidelity " + name, fidelity(rho, rec.rho), 0.99, true);
  }
  // Radon and inverse Radon.
  const Grid2D g2{-8.0, 8.0, 256, -8.0, 8.0, 256};
  for (const Complex a : {Complex(0.0, 0.0), Complex(1.0, 0.5)}) {
    const GaussianState gs = GaussianState::coherent(a);
    const PhaseSpaceGrid w = sample_phase_space([&gs](PhasePoint p) { return wigner_eval(gs, p); }, g2, Normalization::TwoPi);
    InverseRadonOptions opt;
    opt.target = g2;
    const InverseRadonResult inv = inverse_radon(radon_tomogram(w, XGrid{-8.0, 8.0, 256}, optical_frames(180)), opt);
    double err = 0.0;
    for (size_t i = 0; i < w.values.size(); ++i) err = std::max(err, std::abs(w.values[i] - inv.grid.values[i]));
    add(out, "roundtrips", "radon round trip coherent " + format_double(a.real()) + ":" + format_double(a.imag()), err, 1e-3);
  }
  // Wigner displacement property.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const DensityMatrix th = make_state(state::Thermal{0.5}, 64);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Complex a = std::polar(1.5 * std::sqrt(0.5 * (u(rng) + 1.0)), kPi * u(rng));
    const PhasePoint p{2.0 * u(rng), 2.0 * u(rng)};
    worst = std::max(worst, wigner_displacement_check(th, a, p).residual);
  }
  add(out, "roundtrips", "wigner displacement, 100 points", worst, 1e-8);
  // Pure-state idempotence.
  const DequantizerFamily sym = symplectic_dequantizer_family();
  const DequantizerFamily pho = photon_dequantizer_family();
  for (const auto& [name, spec] : std::vector<std::pair<std::string, StateSpec>>{
           {"vacuum", state::Fock{0}}, {"fock:1", state::Fock{1}}, {"coherent:1", state::Coherent{1.0}}}) {
    const DensityMatrix rho = make_state(spec, 32);
    double dev = 0.0;
    for (int i = 0; i < 200; ++i) {
      const LabelPoint xs{3.0 * u(rng), 2.0 * u(rng), 2.0 * u(rng)};
      const LabelPoint xp{std::floor(5.0 * (u(rng) + 1.0)), 1.5 * u(rng), 1.5 * u(rng)};
      dev = std::max(dev, std::abs(star_trace(rho, rho, sym, xs) - symbol(rho, sym, xs)));
      dev = std::max(dev, std::abs(star_trace(rho, rho, pho, xp) - symbol(rho, pho, xp)));
    }
    add(out, "roundtrips", "idempotence " + name, dev, 1e-12);
  }
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "kernels") {
    suite_kernels(out, seed);
    known = true;
  }
  if (all || suite == "homogeneity") {
    suite_homogeneity(out);
    known = true;
  }
  if (all || suite == "gaussian-branch") {
    suite_gaussian_branch(out);
    known = true;
  }
  if (all || suite == "roundtrips") {
    suite_roundtrips(out, seed);
    known = true;
  }
  if (!known) throw Error(ErrorKind::Config, "unknown suite '" + suite + "' (kernels, homogeneity, gaussian-branch, roundtrips, all)");
  return out;
}

// ---------------------------------------------------------------------------------------------
// Commands

namespace {

struct Options {
  std::string scheme;
  std::string state;
  int dim = 0;
  int angles = 64;
  std::string xrange = "-6:6:241";
  int nmax = 20;
  int alpha_grid = 21;
  double alpha_radius = 2.0;
  std::string route = "matrix";
  std::string in;
  std::string out;
  std::string reference;
  double s = 0.5;
  double disk_radius = 3.0;
  double series_tol = 1e-4;
  std::string grid = "-8:8:256";
  std::string norm = "two-pi";
  std::string angular = "linear";
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::string config;
};

Json tolerances() {
  return Json{{"negativity", 1e-12}, {"normalization", 1e-6}, {"leakage", 1e-8}};
}

int cmd_state(const Options& o, std::ostream& out) {
  const StateArg s = parse_state(o.state);
  const int dim = o.dim > 0 ? o.dim : 64;
  const DensityMatrix rho = make_state(s.spec, dim);
  const std::string json = density_to_json(rho.op());
  if (o.out.empty()) {
    out << json << '\n';
  } else {
    write_file(o.out, json + "\n");
  }
  return rho.diagnostics().warning ? kContractViolation : kOk;
}

int cmd_tomogram(const Options& o, std::ostream& out) {
  if (o.scheme != "symplectic" && o.scheme != "photon") throw Error(ErrorKind::Config, "--scheme must be symplectic or photon");
  const StateArg s = parse_state(o.state);
  const int dim = o.dim > 0 ? o.dim : 64;
  const DensityMatrix rho = make_state(s.spec, dim);
  const std::string path = o.out.empty() ? "tomogram.csv" : o.out;

  Json meta{{"command", "tomogram"}, {"scheme", o.scheme}, {"state", o.state}, {"dim", dim}};
  std::ostringstream csv;
  double min_value = 0.0;
  if (o.scheme == "symplectic") {
    if (o.angles < 1) throw Error(ErrorKind::Config, "--angles must be >= 1");
    const XGrid x = parse_range(o.xrange);
    const SymplecticTomogram t = sample_tomogram(
        [&rho](double X, double mu, double nu) { return tomogram_from_fock(rho, X, mu, nu); }, x, optical_frames(o.angles));
    write_tomogram_csv(csv, t);
    const TomogramReport r = validate_tomogram(t);
    min_value = -r.max_negativity;
    meta["angles"] = o.angles;
    meta["xrange"] = Json{{"min", x.min}, {"max", x.max}, {"count", x.count}};
    meta["rows"] = static_cast<std::uint64_t>(t.samples.size());
    meta["max_normalization_error"] = r.max_normalization_error;
  } else {
    if (o.nmax < 0 || o.nmax >= dim) throw Error(ErrorKind::Config, "--nmax must satisfy 0 <= nmax < dim");
    if (o.alpha_grid < 2) throw Error(ErrorKind::Config, "--alpha-grid must be >= 2");
    if (!(o.alpha_radius > 0.0)) throw Error(ErrorKind::Config, "--alpha-radius must be positive");
    if (o.route != "matrix" && o.route != "gaussian") throw Error(ErrorKind::Config, "--route must be matrix or gaussian");
    const AlphaGrid grid = AlphaGrid::square(o.alpha_radius, o.alpha_grid);
    PhotonTomogram t(o.nmax, grid);
    if (o.route == "matrix") {
      t = pn_tomogram_grid(rho, o.nmax, grid);
    } else {
      if (!s.gaussian) throw Error(ErrorKind::Config, "--route gaussian needs a Gaussian state");
      for (int i = 0; i < grid.re_count; ++i)
        for (int j = 0; j < grid.im_count; ++j)
          for (int n = 0; n <= o.nmax; ++n) t.at(n, i, j) = pn_tomogram_gaussian(*s.gaussian, n, grid.at(i, j), dim).value;
    }
    write_photon_csv(csv, t);
    double norm_err = 0.0;
    for (int i = 0; i < grid.re_count; ++i) {
      for (int j = 0; j < grid.im_count; ++j) {
        double sum = 0.0;
        for (int n = 0; n <= o.nmax; ++n) {
          sum += t.at(n, i, j);
          min_value = std::min(min_value, t.at(n, i, j));
        }
        norm_err = std::max(norm_err, std::abs(sum - 1.0));
      }
    }
    meta["nmax"] = o.nmax;
    meta["alpha_grid"] = o.alpha_grid;
    meta["alpha_radius"] = o.alpha_radius;
    meta["route"] = o.route;
    meta["rows"] = static_cast<std::uint64_t>(t.values().size());
    meta["max_photon_sum_deficit"] = norm_err;
  }
  meta["leakage"] = rho.diagnostics().leakage;
  meta["renormalization"] = rho.diagnostics().renormalization;
  meta["min_value"] = min_value;
  meta["tolerances"] = tolerances();
  const bool ok = min_value >= -1e-12 && rho.diagnostics().leakage <= 1e-8;
  meta["contract_ok"] = ok;
  write_file(path, csv.str());
  write_file(path + ".json", meta.dump(2) + "\n");
  out << meta.dump(2) << '\n';
  return ok ? kOk : kContractViolation;
}

int cmd_reconstruct(const Options& o, std::ostream& out) {
  if (o.scheme != "symplectic" && o.scheme != "photon") throw Error(ErrorKind::Config, "--scheme must be symplectic or photon");
  if (o.in.empty()) throw Error(ErrorKind::Config, "--in is required");
  std::ifstream in(o.in, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot open '" + o.in + "'");
  Json report{{"command", "reconstruct"}, {"scheme", o.scheme}, {"input", o.in}};
  std::optional<StateArg> ref;
  if (!o.reference.empty()) ref = parse_state(o.reference);

  if (o.scheme == "photon") {
    const PhotonTomogram t = read_photon_csv(in);
    ReconstructionConfig cfg;
    cfg.s = o.s;
    cfg.dim = o.dim > 0 ? o.dim : 24;
    cfg.n_max = std::min(t.n_max(), cfg.dim - 1);
    cfg.disk_radius = o.disk_radius;
    cfg.series_tol = o.series_tol;
    const PhotonReconstruction rec = pn_reconstruct(t, cfg);
    const std::string path = o.out.empty() ? "reconstruction.json" : o.out;
    write_file(path, density_to_json(rec.rho) + "\n");
    report["output"] = path;
    report["dim"] = cfg.dim;
    report["s"] = cfg.s;
    report["n_max"] = cfg.n_max;
    report["disk_radius"] = cfg.disk_radius;
    report["accepted_points"] = rec.accepted_points;
    report["rejected_points"] = rec.rejected_points;
    report["diverging_points"] = rec.diverging_points;
    report["tail_estimate"] = rec.tail_estimate;
    report["trace"] = rec.rho.trace().real();
    if (ref) {
      report["reference"] = ref->text;
      report["fidelity"] = fidelity(make_state(ref->spec, cfg.dim), rec.rho);
    }
    write_file(path + ".report.json", report.dump(2) + "\n");
  } else {
    const SymplecticTomogram t = read_tomogram_csv(in);
    const XGrid axis = parse_range(o.grid);
    InverseRadonOptions opt;
    opt.target = Grid2D{axis.min, axis.max, axis.count, axis.min, axis.max, axis.count};
    if (o.norm == "two-pi") {
      opt.norm = Normalization::TwoPi;
    } else if (o.norm == "unit-integral") {
      opt.norm = Normalization::UnitIntegral;
    } else {
      throw Error(ErrorKind::Config, "--norm must be two-pi or unit-integral");
    }
    if (o.angular == "linear") {
      opt.angular = AngularInterpolation::Linear;
    } else if (o.angular == "cubic") {
      opt.angular = AngularInterpolation::Cubic;
    } else {
      throw Error(ErrorKind::Config, "--angular must be linear or cubic");
    }
    const InverseRadonResult inv = inverse_radon(t, opt);
    const std::string path = o.out.empty() ? "wigner.grid" : o.out;
    std::ostringstream text;
    write_grid(text, inv.grid);
    write_file(path, text.str());
    report["output"] = path;
    report["convention"] = o.norm;
    report["freq_cutoff"] = inv.freq_cutoff;
    report["freq_step"] = inv.freq_step;
    report["aliasing_warning"] = inv.aliasing_warning;
    report["integral"] = inv.grid.integral();
    if (ref) {
      const auto w = reference_wigner(*ref, o.dim > 0 ? o.dim : 64);
      const PhaseSpaceGrid exact = sample_phase_space(w, opt.target, Normalization::TwoPi).converted(opt.norm);
      double err = 0.0;
      for (size_t i = 0; i < exact.values.size(); ++i) err = std::max(err, std::abs(exact.values[i] - inv.grid.values[i]));
      report["reference"] = ref->text;
      report["max_abs_error"] = err;
    }
    write_file(path + ".report.json", report.dump(2) + "\n");
  }
  out << report.dump(2) << '\n';
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::vector<CheckResult> results = run_suite(o.suite, o.seed);
  Json checks = Json::array();
  bool all_ok = true;
  for (const auto& r : results) {
    checks.push_back(Json{{"suite", r.suite}, {"name", r.name}, {"measured", r.measured}, {"tolerance", r.tolerance},
                          {"passed", r.passed}});
    all_ok = all_ok && r.passed;
  }
  const Json report{{"command", "verify"}, {"suite", o.suite}, {"seed", o.seed}, {"passed", all_ok}, {"checks", checks}};
  if (!o.out.empty()) write_file(o.out, report.dump(2) + "\n");
  out << report.dump(2) << '\n';
  return all_ok ? kOk : kInvariantFailure;
}

struct App {
  CLI::App app{"Tomographic-probability toolkit", "tomokit"};
  Options o;
  CLI::App* state = nullptr;
  CLI::App* tomogram = nullptr;
  CLI::App* reconstruct = nullptr;
  CLI::App* verify = nullptr;

  App() {
    app.require_subcommand(1);

    state = app.add_subcommand("state", "write a density matrix as JSON");
    state->add_option("--state", o.state, "vacuum | fock:n | coherent:re[:im] | thermal:nbar | squeezed:r")->required();
    state->add_option("--dim", o.dim, "Fock truncation N (default 64)");
    state->add_option("--out", o.out, "output file (default stdout)");

    tomogram = app.add_subcommand("tomogram", "sample a symplectic or photon-number tomogram");
    tomogram->add_option("--scheme", o.scheme, "symplectic | photon")->required();
    tomogram->add_option("--state", o.state, "state specification")->required();
    tomogram->add_option("--dim", o.dim, "Fock truncation N (default 64)");
    tomogram->add_option("--angles", o.angles, "number of optical slices on [0, pi)");
    tomogram->add_option("--xrange", o.xrange, "X grid min:max:count");
    tomogram->add_option("--nmax", o.nmax, "largest photon number");
    tomogram->add_option("--alpha-grid", o.alpha_grid, "alpha grid points per axis");
    tomogram->add_option("--alpha-radius", o.alpha_radius, "alpha grid half-width");
    tomogram->add_option("--route", o.route, "matrix | gaussian (photon scheme)");
    tomogram->add_option("--out", o.out, "CSV output (default tomogram.csv); metadata goes to <out>.json");

    reconstruct = app.add_subcommand("reconstruct", "invert a tomogram file");
    reconstruct->add_option("--scheme", o.scheme, "symplectic | photon")->required();
    reconstruct->add_option("--in", o.in, "tomogram CSV");
    reconstruct->add_option("--out", o.out, "density JSON or Wigner grid; report goes to <out>.report.json");
    reconstruct->add_option("--reference", o.reference, "state to compare against");
    reconstruct->add_option("--dim", o.dim, "truncation N (photon default 24, reference Wigner 64)");
    reconstruct->add_option("--s", o.s, "ordering parameter in (0, 1)");
    reconstruct->add_option("--disk-radius", o.disk_radius, "alpha disk radius");
    reconstruct->add_option("--series-tol", o.series_tol, "photon series guard tolerance");
    reconstruct->add_option("--grid", o.grid, "target phase-space axis min:max:count (both axes)");
    reconstruct->add_option("--norm", o.norm, "two-pi | unit-integral");
    reconstruct->add_option("--angular", o.angular, "linear | cubic angular interpolation");

    verify = app.add_subcommand("verify", "run invariant suites");
    verify->add_option("suite", o.suite, "kernels | homogeneity | gaussian-branch | roundtrips | all");
    verify->add_option("--seed", o.seed, "seed for property sweeps");
    verify->add_option("--out", o.out, "JSON report file");

    for (CLI::App* sub : {state, tomogram, reconstruct, verify}) {
      sub->add_option("--config", o.config, "JSON file of option values; flags win");
    }
  }

  CLI::App* chosen() const {
    for (CLI::App* sub : {state, tomogram, reconstruct, verify})
      if (sub->parsed()) return sub;
    return nullptr;
  }
};

bool given(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Adds "--key=value" for config entries whose option is not on the command line.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  const Json j = [&] {
    try {
      return Json::parse(read_file(path));
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::Config, "config file '" + path + "': " + e.what());
    }
  }();
  if (!j.is_object()) throw Error(ErrorKind::Config, "config file must hold a JSON object");
  std::vector<std::string> merged = args;
  const bool has_positional = args.size() > 1 && args[1].rfind("--", 0) != 0;
  for (const auto& [key, value] : j.items()) {
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_number_integer() || value.is_number_unsigned()) {
      text = value.dump();
    } else if (value.is_number()) {
      text = format_double(value.get<double>());
    } else {
      throw Error(ErrorKind::Config, "config key '" + key + "' must be a string or number");
    }
    if (key == "config") continue;
    if (key == "suite" && !args.empty() && args[0] == "verify") {
      if (!has_positional) merged.insert(merged.begin() + 1, text);
      continue;
    }
    if (!given(args, "--" + key)) merged.push_back("--" + key + "=" + text);
  }
  return merged;
}

int dispatch(App& a, std::ostream& out) {
  CLI::App* sub = a.chosen();
  if (sub == a.state) return cmd_state(a.o, out);
  if (sub == a.tomogram) return cmd_tomogram(a.o, out);
  if (sub == a.reconstruct) return cmd_reconstruct(a.o, out);
  return cmd_verify(a.o, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const std::vector<std::string> argv = merge_config(args);
    App a;
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
      a.app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = a.app.exit(e, out, err);
      return code == 0 ? kOk : kConfigError;
    }
    return dispatch(a, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace tomokit::cli
