#include "vortexq/vortexpde.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <sstream>

namespace vortexq::vortexpde {

namespace {

constexpr double kPi = std::numbers::pi;

double l2_norm(const ScalarField& f) {
  double s = 0.0;
  for (double x : f.values()) s += x * x;
  return std::sqrt(s * f.spec().cell_area());
}

double dot(const ScalarField& a, const ScalarField& b) {
  double s = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) s += av[k] * bv[k];
  return s;
}

// Residual of v = c + w. Keeping the constant c apart from the fluctuation w
// keeps the rounding noise of the stored field, which the Laplacian
// amplifies by max |k|^2, proportional to |w| rather than |v|.
ScalarField regular_residual_field(geometry::Fourier& fourier, double tau, int degree, const ScalarField& h, double c,
                                   const ScalarField& w) {
  const TorusSpec& spec = w.spec();
  ScalarField f(spec);
  fourier.laplacian(w.values(), f.values());
  const double source = 4.0 * kPi * degree / spec.area;
  for (std::size_t k = 0; k < f.size(); ++k) f[k] -= tau * (h[k] * std::exp(c + w[k]) - 1.0) + source;
  return f;
}

/// Splits v into its grid mean and the fluctuation.
std::pair<double, ScalarField> split_mean(const ScalarField& v) {
  const double c = geometry::mean(v);
  ScalarField w = v;
  for (std::size_t k = 0; k < w.size(); ++k) w[k] -= c;
  return {c, std::move(w)};
}

}  // namespace

// ---------------------------------------------------------------------------
// QuantizationSpec

QuantizationSpec QuantizationSpec::from_tau(long genus, long degree, double tau, double volume) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorKind::InvalidArgument, "tau must be positive");
  if (!(volume > 0.0) || !std::isfinite(volume)) throw Error(ErrorKind::InvalidArea, "volume must be positive");
  if (genus < 0) throw Error(ErrorKind::InvalidArgument, "genus must be nonnegative");
  if (degree < 1) throw Error(ErrorKind::InvalidArgument, "degree must be positive");
  QuantizationSpec q;
  q.genus = genus;
  q.degree = degree;
  q.tau = tau;
  q.volume = volume;
  q.level = rationalize(tau * volume / (4.0 * kPi));
  return q;
}

QuantizationSpec QuantizationSpec::from_level(long genus, long degree, const Rational& level, double volume) {
  if (level <= 0) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  if (!(volume > 0.0) || !std::isfinite(volume)) throw Error(ErrorKind::InvalidArea, "volume must be positive");
  if (genus < 0) throw Error(ErrorKind::InvalidArgument, "genus must be nonnegative");
  if (degree < 1) throw Error(ErrorKind::InvalidArgument, "degree must be positive");
  QuantizationSpec q;
  q.genus = genus;
  q.degree = degree;
  q.volume = volume;
  q.level = level;
  q.tau = 4.0 * kPi * to_double(level) / volume;
  return q;
}

bool QuantizationSpec::bradlow() const noexcept { return tau * volume > 4.0 * kPi * static_cast<double>(degree); }

void QuantizationSpec::require_bradlow() const {
  if (!bradlow()) {
    std::ostringstream os;
    os.precision(17);
    os << "tau*V = " << tau * volume << " <= 4*pi*d = " << 4.0 * kPi * static_cast<double>(degree);
    throw Error(ErrorKind::BradlowViolation, os.str());
  }
}

bool QuantizationSpec::level_consistent() const { return rationalize(tau * volume / (4.0 * kPi)) == level; }

// ---------------------------------------------------------------------------
// Divisors

int DivisorSpec::degree() const noexcept {
  int d = 0;
  for (int n : multiplicities) d += n;
  return d;
}

DivisorSpec make_divisor(const TorusSpec& spec, const std::vector<Complex>& points,
                         const std::vector<int>& multiplicities) {
  if (points.empty()) throw Error(ErrorKind::InvalidDivisor, "divisor has no points");
  if (points.size() != multiplicities.size()) throw Error(ErrorKind::InvalidDivisor, "points/multiplicities size mismatch");
  DivisorSpec out;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (multiplicities[k] <= 0) throw Error(ErrorKind::InvalidDivisor, "multiplicities must be positive");
    if (!std::isfinite(points[k].real()) || !std::isfinite(points[k].imag())) {
      throw Error(ErrorKind::InvalidDivisor, "divisor point is not finite");
    }
    const Complex p = spec.reduce(points[k]);
    bool merged = false;
    for (std::size_t m = 0; m < out.points.size(); ++m) {
      if (std::abs(spec.centered_offset(p, out.points[m])) < 1e-12) {
        out.multiplicities[m] += multiplicities[k];
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.points.push_back(p);
      out.multiplicities.push_back(multiplicities[k]);
    }
  }
  return out;
}

DivisorSpec make_divisor(const TorusSpec& spec, const std::vector<Complex>& points) {
  return make_divisor(spec, points, std::vector<int>(points.size(), 1));
}

// ---------------------------------------------------------------------------
// Singular part

ScalarField singular_part(const TorusSpec& spec, const DivisorSpec& divisor) {
  ScalarField us(spec);
  for (std::size_t k = 0; k < divisor.points.size(); ++k) {
    ScalarField g = geometry::green_function(spec, divisor.points[k]);
    us += (4.0 * kPi * divisor.multiplicities[k]) * std::move(g);
  }
  return us;
}

ScalarField singular_weight(const TorusSpec& spec, const DivisorSpec& divisor) {
  ScalarField h(spec, 1.0);
  const double log_eta = geometry::log_abs_dedekind_eta(spec.modulus);
  const double im = spec.modulus.imag();
  const int N = spec.resolution;
  for (std::size_t k = 0; k < divisor.points.size(); ++k) {
    const int n = divisor.multiplicities[k];
    for (int j = 0; j < N; ++j) {
      for (int i = 0; i < N; ++i) {
        const Complex w = spec.centered_offset(spec.point(i, j), divisor.points[k]);
        const double a = std::abs(geometry::jacobi_theta1(kPi * w, spec.modulus).value);
        const double e = std::exp(-2.0 * kPi * n * w.imag() * w.imag() / im - 2.0 * n * log_eta);
        h(i, j) *= std::pow(a, 2 * n) * e;
      }
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Linear solves

int solve_screened(geometry::Fourier& fourier, const ScalarField& shift_field, const ScalarField& rhs,
                   ScalarField& x, double rtol, int max_iter) {
  const TorusSpec& spec = rhs.spec();
  const double shift = geometry::mean(shift_field);
  if (!(shift > 0.0)) throw Error(ErrorKind::InvalidArgument, "screening field must have positive mean");

  auto apply = [&](const ScalarField& p, ScalarField& out) {
    fourier.laplacian(p.values(), out.values());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = shift_field[k] * p[k] - out[k];
  };

  ScalarField r(spec), z(spec), p(spec), ap(spec);
  apply(x, ap);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = rhs[k] - ap[k];
  const double bnorm = std::max(std::sqrt(dot(rhs, rhs)), 1e-300);
  fourier.inverse_shifted(r.values(), shift, z.values());
  p = z;
  double rz = dot(r, z);
  int it = 0;
  for (; it < max_iter; ++it) {
    if (std::sqrt(dot(r, r)) <= rtol * bnorm) break;
    apply(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) break;
    const double alpha = rz / pap;
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * ap[k];
    }
    fourier.inverse_shifted(r.values(), shift, z.values());
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = z[k] + beta * p[k];
  }
  return it;
}

// ---------------------------------------------------------------------------
// Newton

Observables reconstruct_observables(const TorusSpec& spec, double tau, const ScalarField& h, const ScalarField& v) {
  Observables obs{ScalarField(spec), ScalarField(spec), 0.0, 0.0};
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double rho = tau * h[k] * std::exp(v[k]);
    obs.higgs_density[k] = rho;
    obs.curvature_density[k] = -0.5 * (rho - tau);
  }
  obs.flux = geometry::integrate(obs.curvature_density);
  obs.higgs_l2 = geometry::integrate(obs.higgs_density);
  return obs;
}

double regular_residual(const TorusSpec& spec, double tau, int degree, const ScalarField& h, const ScalarField& v) {
  geometry::Fourier fourier(spec);
  const auto [c, w] = split_mean(v);
  return regular_residual_field(fourier, tau, degree, h, c, w).max_abs();
}

VortexSolution solve_vortex(const TorusSpec& spec, const QuantizationSpec& q, const DivisorSpec& divisor,
                            const SolverOptions& options) {
  if (!(options.tol > 0.0) || !std::isfinite(options.tol)) {
    throw Error(ErrorKind::InvalidTolerance, "tolerance must be positive");
  }
  q.require_bradlow();
  if (divisor.degree() != q.degree) {
    throw Error(ErrorKind::InvalidDivisor, "divisor degree " + std::to_string(divisor.degree()) +
                                               " does not match d = " + std::to_string(q.degree));
  }
  if (std::fabs(spec.area - q.volume) > 1e-12 * q.volume) {
    throw Error(ErrorKind::InvalidArea, "torus area does not match the quantization volume");
  }

  VortexSolution sol;
  sol.spec = spec;
  sol.q = q;
  sol.divisor = divisor;
  sol.u_s = singular_part(spec, divisor);
  sol.h = singular_weight(spec, divisor);
  sol.v = ScalarField(spec, 0.0);
  if (options.warm_start != nullptr) {
    if (!(options.warm_start->spec() == spec)) throw Error(ErrorKind::ShapeMismatch, "warm start on another torus");
    sol.v = *options.warm_start;
  }

  const double tau = q.tau;
  const int d = static_cast<int>(q.degree);
  geometry::Fourier fourier(spec);
  auto [c, w] = split_mean(sol.v);
  ScalarField f = regular_residual_field(fourier, tau, d, sol.h, c, w);
  double fmax = f.max_abs();
  double fl2 = l2_norm(f);
  sol.residual_history.push_back(fmax);

  ScalarField weight(spec), delta(spec), trial(spec);
  for (int it = 0; it < options.max_newton && fmax > options.tol; ++it) {
    for (std::size_t k = 0; k < weight.size(); ++k) weight[k] = tau * sol.h[k] * std::exp(c + w[k]);
    std::fill(delta.values().begin(), delta.values().end(), 0.0);
    solve_screened(fourier, weight, f, delta, 1e-13, options.max_cg);
    const double delta_mean = geometry::mean(delta);
    for (std::size_t k = 0; k < delta.size(); ++k) delta[k] -= delta_mean;

    // halve the step until the L2 residual decreases
    double step = 1.0;
    bool accepted = false;
    double c_trial = c;
    ScalarField f_trial(spec);
    for (int halving = 0; halving < 40; ++halving, step *= 0.5) {
      c_trial = c + step * delta_mean;
      for (std::size_t k = 0; k < trial.size(); ++k) trial[k] = w[k] + step * delta[k];
      if (!trial.all_finite() || !std::isfinite(c_trial)) continue;
      f_trial = regular_residual_field(fourier, tau, d, sol.h, c_trial, trial);
      if (!f_trial.all_finite()) continue;
      const double l2 = l2_norm(f_trial);
      if (l2 < fl2) {
        accepted = true;
        fl2 = l2;
        break;
      }
    }
    ++sol.iterations;
    if (!accepted) break;
    c = c_trial;
    std::swap(w, trial);
    f = std::move(f_trial);
    fmax = f.max_abs();
    sol.residual_history.push_back(fmax);
  }
  for (std::size_t k = 0; k < w.size(); ++k) sol.v[k] = c + w[k];

  sol.residual_norm = fmax;
  sol.converged = fmax <= options.tol;
  sol.observables = reconstruct_observables(spec, tau, sol.h, sol.v);
  if (!sol.converged) {
    std::ostringstream os;
    os.precision(3);
    os << "Newton stopped after " << sol.iterations << " iterations with residual " << std::scientific << fmax
       << " > tol " << options.tol;
    throw DivergenceError(os.str(), std::move(sol));
  }
  return sol;
}

ObservablesReport observables_report(const VortexSolution& sol) {
  ObservablesReport r;
  r.flux = sol.observables.flux;
  r.higgs_l2 = sol.observables.higgs_l2;
  r.higgs_min = sol.observables.higgs_density.min();
  r.higgs_max = sol.observables.higgs_density.max();
  r.residual_norm = sol.residual_norm;
  return r;
}

}  // namespace vortexq::vortexpde
