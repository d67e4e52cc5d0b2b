#include "vortexq/geometry.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "vortexq/error.hpp"

namespace vortexq::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double wrap_centered(double x) { return x - std::floor(x + 0.5); }

void require_same_spec(const ScalarField& a, const ScalarField& b) {
  if (!(a.spec() == b.spec())) throw Error(ErrorKind::ShapeMismatch, "fields live on different tori");
}

}  // namespace

// ---------------------------------------------------------------------------
// TorusSpec

Complex TorusSpec::point(int i, int j) const noexcept {
  const double n = static_cast<double>(resolution);
  return from_lattice((i + 0.5) / n, (j + 0.5) / n);
}

Complex TorusSpec::from_lattice(double s, double t) const noexcept {
  return scale * (Complex(s, 0.0) + modulus * t);
}

std::pair<double, double> TorusSpec::to_lattice(Complex z) const noexcept {
  const Complex w = z / scale;
  const double t = w.imag() / modulus.imag();
  const double s = w.real() - t * modulus.real();
  return {s, t};
}

Complex TorusSpec::reduce(Complex z) const noexcept {
  auto [s, t] = to_lattice(z);
  s -= std::floor(s);
  t -= std::floor(t);
  if (s >= 1.0) s = 0.0;
  if (t >= 1.0) t = 0.0;
  return from_lattice(s, t);
}

Complex TorusSpec::centered_offset(Complex z, Complex p) const noexcept {
  auto [s, t] = to_lattice(z - p);
  s = wrap_centered(s);
  t = wrap_centered(t);
  return Complex(s, 0.0) + modulus * t;
}

TorusSpec build_torus(Complex modulus, double area, int resolution) {
  if (!(modulus.imag() > 0.0) || !std::isfinite(modulus.real()) || !std::isfinite(modulus.imag())) {
    throw Error(ErrorKind::InvalidModulus, "modulus must have positive imaginary part");
  }
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw Error(ErrorKind::InvalidArea, "area must be positive");
  }
  if (resolution < 32 || !is_power_of_two(resolution)) {
    throw Error(ErrorKind::InvalidResolution, "resolution must be a power of two >= 32");
  }
  TorusSpec spec;
  spec.modulus = modulus;
  spec.area = area;
  spec.resolution = resolution;
  spec.scale = std::sqrt(area / modulus.imag());
  return spec;
}

// ---------------------------------------------------------------------------
// ScalarField

ScalarField::ScalarField(const TorusSpec& spec, double fill) : spec_(spec), values_(spec.size(), fill) {}

ScalarField::ScalarField(const TorusSpec& spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.size()) throw Error(ErrorKind::ShapeMismatch, "value count does not match resolution");
}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::fabs(x));
  return m;
}

double ScalarField::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_spec(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_spec(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double a) noexcept {
  for (double& x : values_) x *= a;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

double integrate(const TorusSpec& spec, std::span<const double> values) {
  // pairwise-free but compensated; grids are at most a few 10^5 points
  double sum = 0.0;
  double c = 0.0;
  for (double x : values) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum * spec.cell_area();
}

double integrate(const ScalarField& f) { return integrate(f.spec(), f.values()); }

double mean(const ScalarField& f) { return integrate(f) / f.spec().area; }

// ---------------------------------------------------------------------------
// Fourier

Fourier::Fourier(const TorusSpec& spec) : spec_(spec), n_(spec.resolution), nh_(spec.resolution / 2 + 1) {
  const std::size_t nreal = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  const std::size_t nspec = static_cast<std::size_t>(n_) * static_cast<std::size_t>(nh_);
  real_ = fftw_alloc_real(nreal);
  auto* spectrum = fftw_alloc_complex(nspec);
  spectrum_ = spectrum;
  {
    std::lock_guard lock(planner_mutex());
    plan_forward_ = fftw_plan_dft_r2c_2d(n_, n_, real_, spectrum, FFTW_ESTIMATE);
    plan_backward_ = fftw_plan_dft_c2r_2d(n_, n_, spectrum, real_, FFTW_ESTIMATE);
  }

  // k = 2 pi (m b1 + n b2) with b1, b2 dual to a1 = L, a2 = L * modulus.
  const double L = spec_.scale;
  const double re = spec_.modulus.real();
  const double im = spec_.modulus.imag();
  auto kvec = [&](double m, double n) {
    return std::pair{2.0 * kPi * m / L, 2.0 * kPi * (n - m * re) / (L * im)};
  };
  k2_.resize(nspec);
  kx_.resize(nspec);
  ky_.resize(nspec);
  const int half = n_ / 2;
  for (int jj = 0; jj < n_; ++jj) {
    const int n = jj <= half ? jj : jj - n_;
    for (int m = 0; m < nh_; ++m) {
      const std::size_t idx = static_cast<std::size_t>(jj) * static_cast<std::size_t>(nh_) + static_cast<std::size_t>(m);
      const bool nyq_m = (m == half);
      const bool nyq_n = (n == half);
      double acc = 0.0;
      int count = 0;
      for (int sm : {1, -1}) {
        if (sm == -1 && !nyq_m) continue;
        for (int sn : {1, -1}) {
          if (sn == -1 && !nyq_n) continue;
          auto [kx, ky] = kvec(sm * m, sn * n);
          acc += kx * kx + ky * ky;
          ++count;
        }
      }
      k2_[idx] = acc / count;
      if (nyq_m || nyq_n) {
        kx_[idx] = 0.0;
        ky_[idx] = 0.0;
      } else {
        auto [kx, ky] = kvec(m, n);
        kx_[idx] = kx;
        ky_[idx] = ky;
      }
    }
  }
}

Fourier::~Fourier() {
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_backward_));
  }
  fftw_free(real_);
  fftw_free(spectrum_);
}

double Fourier::wavenumber_squared(int m, int n) const noexcept {
  const int jj = n >= 0 ? n : n + n_;
  return k2_[static_cast<std::size_t>(jj) * static_cast<std::size_t>(nh_) + static_cast<std::size_t>(m)];
}

void Fourier::forward(std::span<const double> f) {
  std::copy(f.begin(), f.end(), real_);
  fftw_execute(static_cast<fftw_plan>(plan_forward_));
}

void Fourier::backward(std::span<double> out) {
  fftw_execute(static_cast<fftw_plan>(plan_backward_));
  const double norm = 1.0 / (static_cast<double>(n_) * static_cast<double>(n_));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = real_[k] * norm;
}

void Fourier::laplacian(std::span<const double> f, std::span<double> out) {
  forward(f);
  auto* c = static_cast<fftw_complex*>(spectrum_);
  for (std::size_t k = 0; k < k2_.size(); ++k) {
    c[k][0] *= -k2_[k];
    c[k][1] *= -k2_[k];
  }
  backward(out);
}

void Fourier::inverse_laplacian(std::span<const double> rhs, std::span<double> out) {
  forward(rhs);
  auto* c = static_cast<fftw_complex*>(spectrum_);
  c[0][0] = 0.0;
  c[0][1] = 0.0;
  for (std::size_t k = 1; k < k2_.size(); ++k) {
    const double s = -1.0 / k2_[k];
    c[k][0] *= s;
    c[k][1] *= s;
  }
  backward(out);
}

void Fourier::inverse_shifted(std::span<const double> rhs, double shift, std::span<double> out) {
  forward(rhs);
  auto* c = static_cast<fftw_complex*>(spectrum_);
  for (std::size_t k = 0; k < k2_.size(); ++k) {
    const double s = 1.0 / (shift + k2_[k]);
    c[k][0] *= s;
    c[k][1] *= s;
  }
  backward(out);
}

void Fourier::gradient(std::span<const double> f, std::span<double> dx, std::span<double> dy) {
  forward(f);
  auto* c = static_cast<fftw_complex*>(spectrum_);
  const std::size_t nspec = k2_.size();
  std::vector<double> saved(2 * nspec);
  for (std::size_t k = 0; k < nspec; ++k) {
    saved[2 * k] = c[k][0];
    saved[2 * k + 1] = c[k][1];
  }
  // i k f^
  for (std::size_t k = 0; k < nspec; ++k) {
    const double re = saved[2 * k], im = saved[2 * k + 1];
    c[k][0] = -kx_[k] * im;
    c[k][1] = kx_[k] * re;
  }
  backward(dx);
  for (std::size_t k = 0; k < nspec; ++k) {
    const double re = saved[2 * k], im = saved[2 * k + 1];
    c[k][0] = -ky_[k] * im;
    c[k][1] = ky_[k] * re;
  }
  backward(dy);
}

Complex Fourier::coefficient(const ScalarField& f, int m, int n) {
  const int N = f.resolution();
  Complex acc = 0.0;
  for (int j = 0; j < N; ++j) {
    const double t = (j + 0.5) / N;
    for (int i = 0; i < N; ++i) {
      const double s = (i + 0.5) / N;
      acc += f(i, j) * std::polar(1.0, -2.0 * kPi * (m * s + n * t));
    }
  }
  return acc / static_cast<double>(static_cast<std::size_t>(N) * static_cast<std::size_t>(N));
}

ScalarField laplacian(const ScalarField& f) {
  Fourier fourier(f.spec());
  ScalarField out(f.spec());
  fourier.laplacian(f.values(), out.values());
  return out;
}

ScalarField solve_poisson(const TorusSpec& spec, const ScalarField& rhs) {
  if (!(rhs.spec() == spec)) throw Error(ErrorKind::ShapeMismatch, "rhs does not live on this torus");
  const double scale = rhs.max_abs();
  const double m = mean(rhs);
  if (std::fabs(m) > 1e-12 * scale) {
    throw Error(ErrorKind::NonZeroMean, "right-hand side has mean " + std::to_string(m));
  }
  Fourier fourier(spec);
  ScalarField out(spec);
  fourier.inverse_laplacian(rhs.values(), out.values());
  return out;
}

// ---------------------------------------------------------------------------
// Green's function

double green_value(const TorusSpec& spec, Complex pole, Complex z) {
  const Complex w = spec.centered_offset(z, pole);
  const ThetaValue th = jacobi_theta1(kPi * w, spec.modulus);
  const double im = spec.modulus.imag();
  return (std::log(std::abs(th.value)) - kPi * w.imag() * w.imag() / im - log_abs_dedekind_eta(spec.modulus)) /
         (2.0 * kPi);
}

ScalarField green_function(const TorusSpec& spec, Complex pole, GreenNormalization normalization) {
  ScalarField g(spec);
  const double log_eta = log_abs_dedekind_eta(spec.modulus);
  const double im = spec.modulus.imag();
  const int N = spec.resolution;
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      const Complex w = spec.centered_offset(spec.point(i, j), pole);
      const ThetaValue th = jacobi_theta1(kPi * w, spec.modulus);
      // a pole exactly on a grid point would give -inf; clamp to keep the field finite
      const double a = std::max(std::abs(th.value), 1e-300);
      g(i, j) = (std::log(a) - kPi * w.imag() * w.imag() / im - log_eta) / (2.0 * kPi);
    }
  }
  if (normalization == GreenNormalization::Grid) {
    const double m = mean(g);
    for (double& x : g.values()) x -= m;
  }
  return g;
}

}  // namespace vortexq::geometry
