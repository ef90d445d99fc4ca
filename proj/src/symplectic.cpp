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

#include "tomokit/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tomokit/error.hpp"
#include "tomokit/parallel.hpp"

namespace tomokit {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

void require_frame(double mu, double nu) {
  if (mu == 0.0 && nu == 0.0) throw Error(ErrorKind::DegenerateFrame, "(mu, nu) = (0, 0)");
}

// c_n = e^{i n theta} psi_n(X / r), so that w = (1/r) c^dagger rho c.
Vector rotated_eigenvector(double X, double mu, double nu, int dim, double* r_out) {
  require_frame(mu, nu);
  const double r = std::hypot(mu, nu);
  const double theta = std::atan2(nu, mu);
  const std::vector<double> psi = hermite_functions(dim - 1, X / r);
  Vector c(dim);
  for (int n = 0; n < dim; ++n) c(n) = std::polar(psi[n], n * theta);
  *r_out = r;
  return c;
}

// Keys cubic convolution kernel, a = -1/2.
double keys(double s) {
  s = std::abs(s);
  if (s < 1.0) return (1.5 * s - 2.5) * s * s + 1.0;
  if (s < 2.0) return ((-0.5 * s + 2.5) * s - 4.0) * s + 2.0;
  return 0.0;
}

double interpolate(const PhaseSpaceGrid& f, double q, double p) {
  const Grid2D& g = f.grid;
  const double u = (q - g.q_min) / g.q_step();
  const double v = (p - g.p_min) / g.p_step();
  if (u < -2.0 || v < -2.0 || u > g.q_count + 1.0 || v > g.p_count + 1.0) return 0.0;
  const int i0 = static_cast<int>(std::floor(u));
  const int j0 = static_cast<int>(std::floor(v));
  double wq[4];
  double wp[4];
  for (int k = 0; k < 4; ++k) {
    wq[k] = keys(u - (i0 - 1 + k));
    wp[k] = keys(v - (j0 - 1 + k));
  }
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    const int i = i0 - 1 + a;
    if (i < 0 || i >= g.q_count) continue;
    double row = 0.0;
    for (int b = 0; b < 4; ++b) {
      const int j = j0 - 1 + b;
      if (j < 0 || j >= g.p_count) continue;
      row += wp[b] * f.at(i, j);
    }
    acc += wq[a] * row;
  }
  return acc;
}

double trapezoid(const std::vector<double>& y, double h) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

}  // namespace

std::vector<double> hermite_functions(int n_max, double x) {
  if (n_max < 0) throw Error(ErrorKind::Domain, "n_max must be >= 0");
  std::vector<double> psi(n_max + 1);
  psi[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (n_max >= 1) psi[1] = std::sqrt(2.0) * x * psi[0];
  for (int n = 1; n < n_max; ++n) {
    psi[n + 1] = std::sqrt(2.0 / (n + 1)) * x * psi[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * psi[n - 1];
  }
  return psi;
}

WignerValue wigner_from_fock_detailed(const DensityMatrix& rho, PhasePoint point) {
  // D(beta) P D(-beta) = D(2 beta) P, so W = 2 sum_mn rho_mn (-1)^m <n|D(2 beta)|m>, with closed-form
  // elements that are exact inside the basis.
  const Complex two_beta = 2.0 * point.beta();
  const Matrix& m = rho.matrix();
  Complex sum(0.0, 0.0);
  for (int col = 0; col < rho.dim(); ++col) {
    const double sign = col % 2 == 0 ? 1.0 : -1.0;
    for (int row = 0; row < rho.dim(); ++row) {
      if (m(col, row) == Complex(0.0, 0.0)) continue;
      sum += sign * m(col, row) * displacement_element(two_beta, row, col);
    }
  }
  WignerValue out;
  out.value = 2.0 * sum.real();
  out.leakage = truncation_leakage(rho.op());
  return out;
}

double wigner_from_fock(const DensityMatrix& rho, PhasePoint point) {
  return wigner_from_fock_detailed(rho, point).value;
}

OperatorMatrix displaced_density(const DensityMatrix& rho, Complex alpha) {
  const Matrix d = displacement(alpha, rho.dim()).op.matrix();
  Matrix m = d.adjoint() * rho.matrix() * d;
  m = 0.5 * (m + m.adjoint()).eval();
  return OperatorMatrix(std::move(m));
}

DisplacementCheck wigner_displacement_check(const DensityMatrix& rho, Complex alpha, PhasePoint point) {
  DisplacementCheck out;
  if (alpha == Complex(0.0, 0.0)) {
    const WignerValue w = wigner_from_fock_detailed(rho, point);
    out.displaced_value = out.shifted_value = w.value;
    out.truncation_warning = w.leakage > 1e-8;
    return out;
  }
  const DensityMatrix moved = DensityMatrix::from_operator(displaced_density(rho, alpha));
  const WignerValue a = wigner_from_fock_detailed(moved, point);
  const PhasePoint shifted{point.q + std::sqrt(2.0) * alpha.real(), point.p + std::sqrt(2.0) * alpha.imag()};
  const WignerValue b = wigner_from_fock_detailed(rho, shifted);
  out.displaced_value = a.value;
  out.shifted_value = b.value;
  out.residual = std::abs(a.value - b.value);
  out.truncation_warning = std::max({a.leakage, b.leakage, truncation_leakage(moved.op())}) > 1e-8;
  return out;
}

double tomogram_from_fock(const DensityMatrix& rho, double X, double mu, double nu) {
  double r = 0.0;
  const Vector c = rotated_eigenvector(X, mu, nu, rho.dim(), &r);
  return (c.adjoint() * rho.matrix() * c)(0, 0).real() / r;
}

OperatorMatrix symplectic_dequantizer(double X, double mu, double nu, int dim) {
  double r = 0.0;
  const Vector c = rotated_eigenvector(X, mu, nu, dim, &r);
  return OperatorMatrix((c * c.adjoint()) / r);
}

OperatorMatrix symplectic_quantizer(double X, double mu, double nu, int dim) {
  const Complex beta = Complex(nu, -mu) / std::sqrt(2.0);
  OperatorMatrix d = displacement(beta, dim, DisplacementRoute::Analytic).op;
  d *= std::polar(1.0 / kTwoPi, X);
  return d;
}

double PhaseSpaceGrid::integral() const {
  std::vector<double> rows(grid.q_count);
  std::vector<double> line(grid.p_count);
  for (int i = 0; i < grid.q_count; ++i) {
    for (int j = 0; j < grid.p_count; ++j) line[j] = at(i, j);
    rows[i] = trapezoid(line, grid.p_step());
  }
  return trapezoid(rows, grid.q_step());
}

PhaseSpaceGrid PhaseSpaceGrid::converted(Normalization target) const {
  PhaseSpaceGrid out = *this;
  if (target == norm) return out;
  const double factor = target == Normalization::TwoPi ? kTwoPi : 1.0 / kTwoPi;
  for (double& v : out.values) v *= factor;
  out.norm = target;
  return out;
}

PhaseSpaceGrid sample_phase_space(const std::function<double(PhasePoint)>& f, const Grid2D& grid,
                                  Normalization norm) {
  if (grid.q_count < 2 || grid.p_count < 2) throw Error(ErrorKind::UndeclaredGrid, "phase-space grid needs >= 2 points per axis");
  PhaseSpaceGrid out{grid, std::vector<double>(grid.size()), norm};
  parallel_for(static_cast<size_t>(grid.q_count), [&](size_t i) {
    for (int j = 0; j < grid.p_count; ++j) {
      out.values[i * grid.p_count + j] = f(PhasePoint{grid.q(static_cast<int>(i)), grid.p(j)});
    }
  });
  return out;
}

double radon(const PhaseSpaceGrid& f, double X, double mu, double nu) {
  require_frame(mu, nu);
  const Grid2D& g = f.grid;
  const double r = std::hypot(mu, nu);
  const double nq = mu / r;
  const double np = nu / r;
  const double tq = -np;
  const double tp = nq;
  const double s = X / r;
  const double qc = 0.5 * (g.q_min + g.q_max);
  const double pc = 0.5 * (g.p_min + g.p_max);
  const double half = 0.5 * std::hypot(g.q_max - g.q_min, g.p_max - g.p_min) + 2.0 * std::max(g.q_step(), g.p_step());
  const double tc = qc * tq + pc * tp;
  const double h = 0.5 * std::min(g.q_step(), g.p_step());
  const int steps = static_cast<int>(std::ceil(2.0 * half / h));
  double acc = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double t = tc - half + k * h;
    acc += interpolate(f, s * nq + t * tq, s * np + t * tp);
  }
  // The integrand vanishes at both ends, so the plain sum is the trapezoid rule.
  double w = acc * h / r;
  if (f.norm == Normalization::TwoPi) w /= kTwoPi;
  return w;
}

std::vector<Frame> optical_frames(int count) {
  if (count < 1) throw Error(ErrorKind::Config, "angle count must be >= 1");
  std::vector<Frame> frames(count);
  for (int k = 0; k < count; ++k) {
    const double phi = kPi * k / count;
    frames[k] = Frame{std::cos(phi), std::sin(phi)};
  }
  return frames;
}

SymplecticTomogram sample_tomogram(const TomogramFn& w, const XGrid& x, const std::vector<Frame>& frames) {
  if (x.count < 2) throw Error(ErrorKind::UndeclaredGrid, "X grid needs >= 2 points");
  SymplecticTomogram out{x, frames, std::vector<double>(frames.size() * x.count)};
  parallel_for(frames.size(), [&](size_t k) {
    for (int i = 0; i < x.count; ++i) out.at(k, i) = w(x.at(i), frames[k].mu, frames[k].nu);
  });
  return out;
}

SymplecticTomogram radon_tomogram(const PhaseSpaceGrid& f, const XGrid& x, const std::vector<Frame>& frames) {
  return sample_tomogram([&f](double X, double mu, double nu) { return radon(f, X, mu, nu); }, x, frames);
}

Complex characteristic(const SymplecticTomogram& t, size_t frame, double r) {
  const XGrid& x = t.x;
  const Complex z = std::polar(1.0, r * x.step());
  Complex acc(0.0, 0.0);
  for (int j = x.count - 1; j >= 0; --j) acc = acc * z + x.weight(j) * t.at(frame, j);
  return acc * std::polar(1.0, r * x.min);
}

namespace {

struct SliceTable {
  std::vector<size_t> order;   // frame indices sorted by angle
  std::vector<double> angle;   // sorted angles in [0, pi)
};

SliceTable sort_slices(const SymplecticTomogram& t) {
  SliceTable s;
  std::vector<std::pair<double, size_t>> items;
  for (size_t k = 0; k < t.frames.size(); ++k) {
    const Frame& f = t.frames[k];
    if (std::abs(std::hypot(f.mu, f.nu) - 1.0) > 1e-9) {
      throw Error(ErrorKind::UndeclaredGrid, "inverse Radon needs frames on the unit circle");
    }
    double phi = std::atan2(f.nu, f.mu);
    if (phi < 0.0 || phi >= kPi) {
      throw Error(ErrorKind::UndeclaredGrid, "inverse Radon needs slice angles in [0, pi)");
    }
    items.emplace_back(phi, k);
  }
  std::sort(items.begin(), items.end());
  for (size_t k = 0; k + 1 < items.size(); ++k) {
    if (items[k + 1].first - items[k].first < 1e-12) throw Error(ErrorKind::UndeclaredGrid, "duplicate slice angle");
  }
  for (auto& [phi, k] : items) {
    s.angle.push_back(phi);
    s.order.push_back(k);
  }
  return s;
}

}  // namespace

InverseRadonResult inverse_radon(const SymplecticTomogram& t, const InverseRadonOptions& opt) {
  if (t.frames.size() < 2) throw Error(ErrorKind::UndeclaredGrid, "inverse Radon needs at least two slices");
  if (t.x.count < 2) throw Error(ErrorKind::UndeclaredGrid, "X grid needs >= 2 points");
  const Grid2D& target = opt.target;
  if (target.q_count < 2 || target.p_count < 2) throw Error(ErrorKind::UndeclaredGrid, "target grid needs >= 2 points per axis");
  const SliceTable slices = sort_slices(t);
  const int K = static_cast<int>(slices.order.size());
  const double nyquist = kPi / t.x.step();

  // Support radius of the object, from where the slices are non-negligible; used by the aliasing check.
  double peak = 0.0;
  for (double v : t.samples) peak = std::max(peak, std::abs(v));
  double support = 0.0;
  for (size_t k = 0; k < t.frames.size(); ++k) {
    for (int j = 0; j < t.x.count; ++j) {
      if (std::abs(t.at(k, j)) > 1e-10 * peak) support = std::max(support, std::abs(t.x.at(j)));
    }
  }

  double cutoff = opt.freq_cutoff;
  if (cutoff <= 0.0) {
    const double dr = 0.05;
    double g0 = 0.0;
    for (size_t k = 0; k < t.frames.size(); ++k) g0 = std::max(g0, std::abs(characteristic(t, k, 0.0)));
    std::vector<double> envelope;
    for (double r = 0.0; r < nyquist; r += dr) {
      double m = 0.0;
      for (size_t k = 0; k < t.frames.size(); ++k) m = std::max(m, std::abs(characteristic(t, k, r)));
      envelope.push_back(m);
    }
    // Noise floor of the sampled data, read off the band just below Nyquist.
    double floor = 0.0;
    for (size_t i = envelope.size() * 9 / 10; i < envelope.size(); ++i) floor = std::max(floor, envelope[i]);
    const double threshold = std::max(1e-12 * g0, 4.0 * floor);
    cutoff = dr;
    for (size_t i = 0; i < envelope.size(); ++i) {
      if (envelope[i] > threshold) cutoff = (i + 1) * dr;
    }
    cutoff = std::min(cutoff, nyquist);
  }

  const double extent = std::max({std::abs(target.q_min), std::abs(target.q_max), std::abs(target.p_min),
                                  std::abs(target.p_max)});
  // The frequency step uses the X-grid extent rather than the data support so the map stays linear.
  const double dk = kPi / (extent + std::max(std::abs(t.x.min), std::abs(t.x.max)));
  const int half = static_cast<int>(std::ceil(cutoff / dk));
  const int M = 2 * half + 1;

  double max_gap = slices.angle.front() + kPi - slices.angle.back();
  for (int k = 0; k + 1 < K; ++k) max_gap = std::max(max_gap, slices.angle[k + 1] - slices.angle[k]);

  // Virtual slice v: real slice v mod K, angle shifted by pi per wrap, radial frequency mirrored.
  const auto virtual_angle = [&](int v) {
    const int wraps = v >= 0 ? v / K : -((-v + K - 1) / K);
    return slices.angle[v - wraps * K] + wraps * kPi;
  };
  const auto virtual_value = [&](int v, double r) {
    const int wraps = v >= 0 ? v / K : -((-v + K - 1) / K);
    const double rr = (wraps % 2 == 0) ? r : -r;
    return characteristic(t, slices.order[v - wraps * K], rr);
  };

  Matrix G = Matrix::Zero(M, M);
  parallel_for(static_cast<size_t>(M), [&](size_t a) {
    const double mu = (static_cast<int>(a) - half) * dk;
    for (int b = 0; b < M; ++b) {
      const double nu = (b - half) * dk;
      double r = std::hypot(mu, nu);
      if (r > cutoff) continue;
      double phi = std::atan2(nu, mu);
      if (phi < 0.0) {
        phi += kPi;
        r = -r;
      } else if (phi >= kPi) {
        phi -= kPi;
        r = -r;
      }
      int s = static_cast<int>(std::upper_bound(slices.angle.begin(), slices.angle.end(), phi) - slices.angle.begin()) - 1;
      Complex value;
      if (opt.angular == AngularInterpolation::Linear) {
        const double p0 = virtual_angle(s);
        const double p1 = virtual_angle(s + 1);
        const double u = (phi - p0) / (p1 - p0);
        value = (1.0 - u) * virtual_value(s, r) + u * virtual_value(s + 1, r);
      } else {
        double nodes[4];
        for (int k = 0; k < 4; ++k) nodes[k] = virtual_angle(s - 1 + k);
        value = Complex(0.0, 0.0);
        for (int k = 0; k < 4; ++k) {
          double l = 1.0;
          for (int m = 0; m < 4; ++m) {
            if (m != k) l *= (phi - nodes[m]) / (nodes[k] - nodes[m]);
          }
          value += l * virtual_value(s - 1 + k, r);
        }
      }
      G(a, b) = value;
    }
  });

  // f(q_i, p_j) = (dk^2 / 4pi^2) sum_ab G_ab e^{-i(mu_a q_i + nu_b p_j)}, done separably.
  Matrix Eq(target.q_count, M);
  Matrix Ep(M, target.p_count);
  for (int i = 0; i < target.q_count; ++i) {
    for (int a = 0; a < M; ++a) Eq(i, a) = std::polar(1.0, -(a - half) * dk * target.q(i));
  }
  for (int b = 0; b < M; ++b) {
    for (int j = 0; j < target.p_count; ++j) Ep(b, j) = std::polar(1.0, -(b - half) * dk * target.p(j));
  }
  const Matrix F = Eq * (G * Ep);
  const double scale = dk * dk / (4.0 * kPi * kPi) * (opt.norm == Normalization::TwoPi ? kTwoPi : 1.0);

  InverseRadonResult out;
  out.grid = PhaseSpaceGrid{target, std::vector<double>(target.size()), opt.norm};
  for (int i = 0; i < target.q_count; ++i) {
    for (int j = 0; j < target.p_count; ++j) out.grid.values[static_cast<size_t>(i) * target.p_count + j] = scale * F(i, j).real();
  }
  out.freq_cutoff = cutoff;
  out.freq_step = dk;
  out.aliasing_warning = cutoff * max_gap * support > kPi;
  return out;
}

OpticalSlice optical_slice(const TomogramFn& w, double phi, const XGrid& x) {
  if (x.count < 2) throw Error(ErrorKind::UndeclaredGrid, "X grid needs >= 2 points");
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  const double mu = std::cos(phi);
  const double nu = std::sin(phi);
  OpticalSlice out{x, std::vector<double>(x.count), 0.0};
  for (int i = 0; i < x.count; ++i) out.w[i] = w(x.at(i), mu, nu);
  out.integral = trapezoid(out.w, x.step());
  return out;
}

double TomogramReport::max_homogeneity_residual() const {
  double m = 0.0;
  for (double r : homogeneity_residuals) m = std::max(m, r);
  return m;
}

bool TomogramReport::passes(double negativity_tol, double normalization_tol, double homogeneity_tol) const {
  return max_negativity <= negativity_tol && max_normalization_error <= normalization_tol &&
         max_homogeneity_residual() <= homogeneity_tol;
}

TomogramReport validate_tomogram(const TomogramFn& w, const TomogramCheckSpec& spec) {
  TomogramReport report;
  const SymplecticTomogram t = sample_tomogram(w, spec.x, spec.frames);
  double min_w = 0.0;
  for (double v : t.samples) min_w = std::min(min_w, v);
  report.max_negativity = std::max(0.0, -min_w);
  report.negative_flag = min_w < -1e-12;
  for (size_t k = 0; k < t.frames.size(); ++k) {
    std::vector<double> row(t.samples.begin() + k * spec.x.count, t.samples.begin() + (k + 1) * spec.x.count);
    const double err = std::abs(trapezoid(row, spec.x.step()) - 1.0);
    report.normalization_errors.push_back(err);
    report.max_normalization_error = std::max(report.max_normalization_error, err);
  }
  for (double lambda : spec.lambdas) {
    std::vector<double> worst(t.frames.size(), 0.0);
    parallel_for(t.frames.size(), [&](size_t k) {
      const Frame& f = t.frames[k];
      for (int i = 0; i < spec.x.count; ++i) {
        const double X = spec.x.at(i);
        const double scaled = std::abs(lambda) * w(lambda * X, lambda * f.mu, lambda * f.nu);
        worst[k] = std::max(worst[k], std::abs(scaled - t.at(k, i)));
      }
    });
    report.homogeneity_residuals.push_back(*std::max_element(worst.begin(), worst.end()));
  }
  return report;
}

TomogramReport validate_tomogram(const SymplecticTomogram& t) {
  TomogramReport report;
  double min_w = 0.0;
  for (double v : t.samples) min_w = std::min(min_w, v);
  report.max_negativity = std::max(0.0, -min_w);
  report.negative_flag = min_w < -1e-12;
  const XGrid& x = t.x;
  for (size_t k = 0; k < t.frames.size(); ++k) {
    std::vector<double> row(t.samples.begin() + k * x.count, t.samples.begin() + (k + 1) * x.count);
    const double err = std::abs(trapezoid(row, x.step()) - 1.0);
    report.normalization_errors.push_back(err);
    report.max_normalization_error = std::max(report.max_normalization_error, err);
  }
  for (size_t f = 0; f < t.frames.size(); ++f) {
    const Frame& a = t.frames[f];
    const double ra2 = a.mu * a.mu + a.nu * a.nu;
    for (size_t g = 0; g < t.frames.size(); ++g) {
      if (g == f) continue;
      const Frame& b = t.frames[g];
      const double cross = a.mu * b.nu - a.nu * b.mu;
      if (std::abs(cross) > 1e-12 * (ra2 + b.mu * b.mu + b.nu * b.nu)) continue;
      const double lambda = (a.mu * b.mu + a.nu * b.nu) / ra2;
      if (std::abs(lambda - 1.0) < 1e-12) continue;
      double worst = 0.0;
      for (int i = 0; i < x.count; ++i) {
        const double u = (lambda * x.at(i) - x.min) / x.step();
        if (u < 0.0 || u > x.count - 1) continue;
        const int j = std::min(static_cast<int>(u), x.count - 2);
        const double frac = u - j;
        const double wb = (1.0 - frac) * t.at(g, j) + frac * t.at(g, j + 1);
        worst = std::max(worst, std::abs(std::abs(lambda) * wb - t.at(f, i)));
      }
      report.homogeneity_residuals.push_back(worst);
      ++report.homogeneity_pairs;
    }
  }
  return report;
}

}  // namespace tomokit
