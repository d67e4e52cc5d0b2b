#include "vortexq/zetadet.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>
#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vortexq/error.hpp"

namespace vortexq::zetadet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
// Terms with exponent below e^{-kCut} are dropped; the tail bound covers them.
constexpr double kCut = 50.0;

struct GslQuiet {
  GslQuiet() { gsl_set_error_handler_off(); }
};
const GslQuiet gsl_quiet;

double gamma_inc(double a, double x) {
  gsl_sf_result r;
  if (gsl_sf_gamma_inc_e(a, x, &r) != GSL_SUCCESS) {
    throw Error(ErrorKind::InvalidArgument, "incomplete gamma failed at a = " + std::to_string(a));
  }
  return r.val;
}

/// Visits every (x, y) != 0 with |x + y tau| <= radius.
template <class F>
void for_each_lattice_point(Complex tau, double radius, F&& f) {
  const double re = tau.real();
  const double im = tau.imag();
  const double r2 = radius * radius;
  const long ymax = static_cast<long>(std::floor(radius / im));
  for (long y = -ymax; y <= ymax; ++y) {
    const double yi = static_cast<double>(y) * im;
    const double rem = r2 - yi * yi;
    if (rem < 0.0) continue;
    const double w = std::sqrt(rem);
    const double c = -static_cast<double>(y) * re;
    const long x0 = static_cast<long>(std::ceil(c - w));
    const long x1 = static_cast<long>(std::floor(c + w));
    for (long x = x0; x <= x1; ++x) {
      if (x == 0 && y == 0) continue;
      const double xr = static_cast<double>(x) + static_cast<double>(y) * re;
      const double norm2 = xr * xr + yi * yi;
      if (norm2 <= r2) f(x, y, norm2);
    }
  }
}

/// Upper bound for the covering radius of Z + tau Z.
double covering_radius_unit(Complex tau) { return 0.5 * std::max(std::abs(1.0 + tau), std::abs(1.0 - tau)); }

/// Shortest nonzero |x + y tau|.
double shortest_unit(Complex tau) {
  double best = std::abs(Complex(1.0, 0.0));
  for_each_lattice_point(tau, best, [&](long, long, double n2) { best = std::min(best, std::sqrt(n2)); });
  return best;
}

/// sum over lattice points p with |p| > R of exp(-a |p|^2), for a lattice of
/// cell area `cell` and covering radius <= delta.
double gauss_tail(double cell, double delta, double a, double R) {
  const double rho0 = std::max(R - 2.0 * delta, 0.0);
  const double sa = std::sqrt(a);
  return (2.0 * kPi / cell) *
         (std::exp(-a * rho0 * rho0) / (2.0 * a) + delta * std::sqrt(kPi) / (2.0 * sa) * std::erfc(sa * rho0));
}

struct Scales {
  double c;      // lambda = c * |n - m tau|^2
  double dsq;    // |gamma|^2 = dsq * |x + y tau|^2
  double t0;     // Mellin split
};

Scales scales(const TorusSpec& spec) {
  const double im = spec.modulus.imag();
  return Scales{4.0 * kPi * kPi / (spec.area * im), spec.area / im, spec.area / (4.0 * kPi)};
}

long double kahan_sum(const std::vector<long double>& terms) {
  long double s = 0.0L;
  long double comp = 0.0L;
  for (long double x : terms) {
    const long double y = x - comp;
    const long double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

/// Neville extrapolation of samples f(h_j) to h = 0.
double extrapolate_to_zero(const std::vector<double>& h, std::vector<double> f) {
  const std::size_t n = f.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      f[i] = (h[i - level] * f[i] - h[i] * f[i - 1]) / (h[i - level] - h[i]);
      if (i == level) break;
    }
  }
  return f[n - 1];
}

}  // namespace

// ---------------------------------------------------------------------------

EigenvalueList dual_lattice_eigenvalues(const TorusSpec& spec, double cutoff, int verify_levels) {
  if (!(cutoff > 0.0)) throw Error(ErrorKind::InvalidArgument, "cutoff must be positive");
  const Scales sc = scales(spec);
  struct Raw {
    double lambda;
    int m, n;
  };
  std::vector<Raw> raw;
  for_each_lattice_point(spec.modulus, std::sqrt(cutoff / sc.c), [&](long x, long y, double n2) {
    const double lambda = sc.c * n2;
    if (lambda <= cutoff) raw.push_back({lambda, static_cast<int>(-y), static_cast<int>(x)});
  });
  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return std::pair{a.m, a.n} < std::pair{b.m, b.n};
  });
  EigenvalueList out;
  for (const Raw& r : raw) {
    if (!out.levels.empty() && std::fabs(r.lambda - out.levels.back().lambda) <= 1e-12 * r.lambda) {
      ++out.levels.back().multiplicity;
    } else {
      out.levels.push_back({r.lambda, 1, r.m, r.n});
    }
  }

  const int N = spec.resolution;
  if (N > 0 && verify_levels > 0) {
    geometry::Fourier fourier(spec);
    geometry::ScalarField f(spec), lap(spec);
    for (const Eigenvalue& e : out.levels) {
      if (out.checked_levels >= verify_levels) break;
      if (std::abs(e.m) >= N / 2 || std::abs(e.n) >= N / 2) continue;
      for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) {
          f(i, j) = std::cos(2.0 * kPi * (e.m * (i + 0.5) + e.n * (j + 0.5)) / N);
        }
      }
      fourier.laplacian(f.values(), lap.values());
      double defect = 0.0;
      for (std::size_t k = 0; k < f.size(); ++k) defect = std::max(defect, std::fabs(-lap[k] - e.lambda * f[k]));
      out.grid_defect = std::max(out.grid_defect, defect / (e.lambda * f.max_abs()));
      ++out.checked_levels;
    }
  }
  return out;
}

LatticeSum zeta_value_split(const TorusSpec& spec, double s, double t0) {
  if (!(t0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "split point must be positive");
  const Scales sc = scales(spec);
  const double V = spec.area;

  std::vector<long double> spectral, spatial;
  const double lambda_cut = kCut / t0;
  for_each_lattice_point(spec.modulus, std::sqrt(lambda_cut / sc.c), [&](long, long, double n2) {
    const double lambda = sc.c * n2;
    spectral.push_back(std::pow(static_cast<long double>(lambda), -s) * gamma_inc(s, lambda * t0));
  });
  const double gamma_cut = 4.0 * t0 * kCut;  // |gamma|^2 bound
  for_each_lattice_point(spec.modulus, std::sqrt(gamma_cut / sc.dsq), [&](long, long, double n2) {
    const double g2 = sc.dsq * n2;
    spatial.push_back(std::pow(static_cast<long double>(g2 / 4.0), s - 1.0) * gamma_inc(1.0 - s, g2 / (4.0 * t0)));
  });
  std::sort(spectral.begin(), spectral.end(), [](long double a, long double b) { return std::fabs(a) < std::fabs(b); });
  std::sort(spatial.begin(), spatial.end(), [](long double a, long double b) { return std::fabs(a) < std::fabs(b); });

  const long double total = kahan_sum(spectral) + (V / (4.0 * kPi)) * kahan_sum(spatial) +
                            V * std::pow(t0, s - 1.0) / (4.0 * kPi * (s - 1.0)) - std::pow(t0, s) / s;
  LatticeSum out;
  out.value = static_cast<double>(total / std::tgamma(s));
  out.terms = static_cast<long>(spectral.size() + spatial.size());
  if (s > 1.0 && kCut >= 2.0 * (s - 1.0)) {
    const double delta_unit = covering_radius_unit(spec.modulus);
    const double spec_tail = 2.0 * std::pow(t0, s - 1.0) / lambda_cut *
                             gauss_tail(4.0 * kPi * kPi / V, std::sqrt(sc.c) * delta_unit, t0, std::sqrt(lambda_cut));
    const double space_tail = std::pow(t0, s - 1.0) / kCut *
                              gauss_tail(V, std::sqrt(sc.dsq) * delta_unit, 1.0 / (4.0 * t0), std::sqrt(gamma_cut));
    out.tail_bound = (spec_tail + V / (4.0 * kPi) * space_tail) / std::tgamma(s);
  } else {
    out.tail_bound = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double zeta_value(const TorusSpec& spec, double t) {
  if (!(t > 1.0)) {
    throw Error(ErrorKind::ConvergenceDomain, "zeta_value needs t > 1; use zeta_prime_zero for the continuation");
  }
  return zeta_value_split(spec, t, spec.area / (4.0 * kPi)).value;
}

LatticeSum direct_partial_sum(const TorusSpec& spec, double t, double radius) {
  if (!(t > 1.0)) throw Error(ErrorKind::ConvergenceDomain, "direct lattice sum needs t > 1");
  const Scales sc = scales(spec);
  const double delta_unit = covering_radius_unit(spec.modulus);
  if (!(radius > 2.0 * delta_unit)) throw Error(ErrorKind::InvalidArgument, "radius too small for a tail bound");
  // accumulate shell by shell in y so the compensated sum stays cheap
  long double s = 0.0L, comp = 0.0L;
  long terms = 0;
  for_each_lattice_point(spec.modulus, radius, [&](long, long, double n2) {
    const long double x = std::pow(static_cast<long double>(sc.c) * n2, -static_cast<long double>(t));
    const long double y = x - comp;
    const long double u = s + y;
    comp = (u - s) - y;
    s = u;
    ++terms;
  });
  // sum_{|k| > R} |k|^{-2t} <= (2 pi / A) [rho0^{2-2t} / (2t-2) + delta rho0^{1-2t} / (2t-1)], rho0 = R - 2 delta,
  // in units where |k| = |n - m tau|: A = Im tau, and lambda = c |k|^2
  const double rho0 = radius - 2.0 * delta_unit;
  const double tail_unit = (2.0 * kPi / spec.modulus.imag()) *
                           (std::pow(rho0, 2.0 - 2.0 * t) / (2.0 * t - 2.0) +
                            delta_unit * std::pow(rho0, 1.0 - 2.0 * t) / (2.0 * t - 1.0));
  LatticeSum out;
  out.value = static_cast<double>(s);
  out.tail_bound = std::pow(sc.c, -t) * tail_unit;
  out.terms = terms;
  return out;
}

RouteValue zeta_route_mellin(const TorusSpec& spec) {
  const Scales sc = scales(spec);
  const double V = spec.area;
  const double t0 = sc.t0;

  std::vector<long double> terms;
  for_each_lattice_point(spec.modulus, std::sqrt(kCut / t0 / sc.c), [&](long, long, double n2) {
    terms.push_back(gsl_sf_expint_E1(sc.c * n2 * t0));
  });
  std::sort(terms.begin(), terms.end());
  const long double e1_sum = kahan_sum(terms);
  terms.clear();
  for_each_lattice_point(spec.modulus, std::sqrt(4.0 * t0 * kCut / sc.dsq), [&](long, long, double n2) {
    const double g2 = sc.dsq * n2;
    terms.push_back(4.0 / g2 * std::exp(-g2 / (4.0 * t0)));
  });
  std::sort(terms.begin(), terms.end());
  const long double g_sum = kahan_sum(terms);

  RouteValue r;
  r.zeta_prime = static_cast<double>(e1_sum + (V / (4.0 * kPi)) * g_sum) - V / (4.0 * kPi * t0) - std::log(t0) -
                 kEulerGamma;
  // zeta(0) from the continued Mellin formula at s = +-h, +-2h
  const double h = 1e-3;
  auto sym = [&](double x) { return 0.5 * (zeta_value_split(spec, x, t0).value + zeta_value_split(spec, -x, t0).value); };
  r.zeta_zero = (4.0 * sym(h) - sym(2.0 * h)) / 3.0;
  return r;
}

RouteValue zeta_route_cutoff(const TorusSpec& spec) {
  const Scales sc = scales(spec);
  const double V = spec.area;
  const double gmin2 = sc.dsq * std::pow(shortest_unit(spec.modulus), 2);
  // exponentially small corrections e^{-|gamma|^2 / 4 eps} stay below e^{-40}
  const double eps0 = gmin2 / 160.0;
  constexpr int levels = 7;
  std::vector<double> eps(levels);
  for (int j = 0; j < levels; ++j) eps[static_cast<std::size_t>(j)] = eps0 * std::ldexp(1.0, -j);
  const double lambda_max = kCut / eps.back();

  std::vector<double> lambdas;
  for_each_lattice_point(spec.modulus, std::sqrt(lambda_max / sc.c), [&](long, long, double n2) {
    lambdas.push_back(sc.c * n2);
  });
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());  // small terms first

  std::vector<double> f0(levels), f1(levels);
  std::vector<long double> a, b;
  a.reserve(lambdas.size());
  b.reserve(lambdas.size());
  for (int j = 0; j < levels; ++j) {
    const long double e = eps[static_cast<std::size_t>(j)];
    a.clear();
    b.clear();
    for (double lam : lambdas) {
      const long double w = std::exp(-e * static_cast<long double>(lam));
      a.push_back(w);
      b.push_back(std::log(static_cast<long double>(lam)) * w);
    }
    const long double weyl = V / (4.0L * kPi * e);
    f0[static_cast<std::size_t>(j)] = static_cast<double>(kahan_sum(a) - weyl);
    f1[static_cast<std::size_t>(j)] = static_cast<double>(-kahan_sum(b) - weyl * (kEulerGamma + std::log(e)));
  }
  RouteValue r;
  r.zeta_zero = extrapolate_to_zero(eps, f0);
  r.zeta_prime = extrapolate_to_zero(eps, f1);
  return r;
}

ZetaResult zeta_prime_zero(const TorusSpec& spec, const std::vector<double>& evaluation_points, double accept_tol) {
  ZetaResult res;
  res.modulus = spec.modulus;
  res.area = spec.area;
  const RouteValue a = zeta_route_mellin(spec);
  const RouteValue b = zeta_route_cutoff(spec);
  res.zeta_zero_mellin = a.zeta_zero;
  res.zeta_zero_cutoff = b.zeta_zero;
  res.zeta_prime_mellin = a.zeta_prime;
  res.zeta_prime_cutoff = b.zeta_prime;
  res.method_spread = std::max(std::fabs(a.zeta_zero - b.zeta_zero), std::fabs(a.zeta_prime - b.zeta_prime));
  if (!(res.method_spread <= accept_tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "zeta(0): " << a.zeta_zero << " vs " << b.zeta_zero << "; zeta'(0): " << a.zeta_prime << " vs "
       << b.zeta_prime;
    throw Error(ErrorKind::MethodDisagreement, os.str());
  }
  res.zeta_zero = a.zeta_zero;
  res.zeta_prime_zero = a.zeta_prime;
  res.quillen_factor = std::exp(res.zeta_prime_zero);
  for (double t : evaluation_points) res.zeta_at[t] = zeta_value(spec, t);
  return res;
}

}  // namespace vortexq::zetadet
