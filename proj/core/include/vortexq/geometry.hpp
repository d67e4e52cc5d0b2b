#pragma once

// Flat-torus geometry: cell-centred N x N grids on C / (L Z + L w Z),
// spectral differential operators, Poisson solves and the theta-function
// Green's function.
//
// Conventions used by every module:
//   * a grid point (i, j) sits at lattice coordinates s = (i + 1/2) / N,
//     t = (j + 1/2) / N and physical position z = L (s + modulus * t), with
//     L = sqrt(area / Im modulus) so that the torus has area `area`;
//   * the Laplacian is the (nonpositive) Laplace-Beltrami operator of the
//     flat metric, discretized spectrally, so its kernel is the constants;
//   * quadrature is the equal-weight rule, area / N^2 per cell.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace vortexq::geometry {

using Complex = std::complex<double>;

struct TorusSpec {
  Complex modulus;
  double area = 0.0;
  int resolution = 0;
  /// Lattice scale L with L^2 Im(modulus) = area.
  double scale = 0.0;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution);
  }
  double cell_area() const noexcept { return area / static_cast<double>(size()); }
  /// Physical position of grid point (i, j).
  Complex point(int i, int j) const noexcept;
  /// Physical position of lattice coordinates (s, t).
  Complex from_lattice(double s, double t) const noexcept;
  /// Lattice coordinates (s, t) of a physical point, not reduced.
  std::pair<double, double> to_lattice(Complex z) const noexcept;
  /// Physical point reduced to the fundamental domain s, t in [0, 1).
  Complex reduce(Complex z) const noexcept;
  /// Smallest-representative difference z - p, lattice-normalized
  /// (i.e. divided by L), with lattice coordinates in [-1/2, 1/2).
  Complex centered_offset(Complex z, Complex p) const noexcept;

  friend bool operator==(const TorusSpec& a, const TorusSpec& b) noexcept {
    return a.modulus == b.modulus && a.area == b.area && a.resolution == b.resolution;
  }
};

/// Throws InvalidModulus / InvalidArea / InvalidResolution.
TorusSpec build_torus(Complex modulus, double area, int resolution);

/// Real grid function on a torus; values are stored row-major with the
/// s index fastest: values[j * N + i].
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const TorusSpec& spec, double fill = 0.0);
  ScalarField(const TorusSpec& spec, std::vector<double> values);

  const TorusSpec& spec() const noexcept { return spec_; }
  int resolution() const noexcept { return spec_.resolution; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator()(int i, int j) noexcept { return values_[index(i, j)]; }
  double operator()(int i, int j) const noexcept { return values_[index(i, j)]; }
  double& operator[](std::size_t k) noexcept { return values_[k]; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  bool all_finite() const noexcept;
  double max_abs() const noexcept;
  double min() const noexcept;
  double max() const noexcept;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double a) noexcept;

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(spec_.resolution) +
           static_cast<std::size_t>(i);
  }

  TorusSpec spec_{};
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Equal-weight quadrature over the torus.
double integrate(const ScalarField& f);
double mean(const ScalarField& f);
double integrate(const TorusSpec& spec, std::span<const double> values);

/// Spectral operators on one torus. Holds FFTW plans and work buffers, so an
/// instance must not be shared between threads; construct one per worker.
class Fourier {
 public:
  explicit Fourier(const TorusSpec& spec);
  ~Fourier();
  Fourier(const Fourier&) = delete;
  Fourier& operator=(const Fourier&) = delete;

  const TorusSpec& spec() const noexcept { return spec_; }

  /// Delta f.
  void laplacian(std::span<const double> f, std::span<double> out);
  /// Zero-mean g with Delta g = rhs - mean(rhs).
  void inverse_laplacian(std::span<const double> rhs, std::span<double> out);
  /// (shift - Delta)^{-1} rhs, shift > 0.
  void inverse_shifted(std::span<const double> rhs, double shift, std::span<double> out);
  /// Physical gradient (d/dx, d/dy).
  void gradient(std::span<const double> f, std::span<double> dx, std::span<double> dy);

  /// |k|^2 of the stored half-spectrum entry, symmetrized on Nyquist lines so
  /// that real fields stay real.
  double wavenumber_squared(int m, int n) const noexcept;

  /// Low-order Fourier coefficient (1/N^2) sum f(x) exp(-2 pi i (m s + n t))
  /// evaluated with the true cell-centre positions.
  static Complex coefficient(const ScalarField& f, int m, int n);

 private:
  void forward(std::span<const double> f);
  void backward(std::span<double> out);

  TorusSpec spec_;
  int n_ = 0;
  int nh_ = 0;
  double* real_ = nullptr;
  void* spectrum_ = nullptr;
  void* plan_forward_ = nullptr;
  void* plan_backward_ = nullptr;
  std::vector<double> k2_;
  std::vector<double> kx_;
  std::vector<double> ky_;
};

/// Discrete (spectral) Laplacian of a field.
ScalarField laplacian(const ScalarField& f);

/// Unique zero-mean f with Delta f = rhs. Throws NonZeroMean when the mean of
/// rhs exceeds 1e-12 of its max norm.
ScalarField solve_poisson(const TorusSpec& spec, const ScalarField& rhs);

// ---------------------------------------------------------------------------
// Theta functions

struct ThetaValue {
  Complex value;       ///< theta_1(z | modulus)
  Complex derivative;  ///< d theta_1 / dz
};

/// Odd Jacobi theta function theta_1(z | tau) = 2 sum (-1)^n q^{(n+1/2)^2} sin((2n+1) z),
/// q = exp(i pi tau), together with its z-derivative.
ThetaValue jacobi_theta1(Complex z, Complex modulus);

/// log |eta(tau)| for the Dedekind eta function.
double log_abs_dedekind_eta(Complex modulus);

/// Continuum Green's function G(z, pole): Delta G = delta_pole - 1/area with
/// exactly zero torus mean,
///   G = (1/2pi) [ log|theta_1(pi w)| - pi (Im w)^2 / Im(modulus) - log|eta| ],
/// w the centered lattice-normalized offset z - pole.
double green_value(const TorusSpec& spec, Complex pole, Complex z);

enum class GreenNormalization {
  Continuum,  ///< additive constant from the continuum mean; pole-position independent
  Grid,       ///< grid-quadrature mean subtracted, so the discrete mean is zero
};

/// G(., pole) sampled on the grid. The continuum constant makes the grid mean
/// O(N^-2 log N); the Grid variant shifts it to zero at the cost of a
/// constant that depends on where the pole sits relative to the cells.
ScalarField green_function(const TorusSpec& spec, Complex pole,
                           GreenNormalization normalization = GreenNormalization::Continuum);

}  // namespace vortexq::geometry
