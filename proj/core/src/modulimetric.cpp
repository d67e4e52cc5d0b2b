#include "vortexq/modulimetric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "vortexq/error.hpp"

namespace vortexq::modulimetric {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidualFloor = 1e-10;

using ComplexField = std::vector<Complex>;

void require_distinct_chart(const DivisorSpec& d) {
  if (d.points.empty()) throw Error(ErrorKind::InvalidDivisor, "empty moduli point");
}

DivisorSpec displaced(const TorusSpec& spec, const DivisorSpec& base, const std::vector<std::pair<int, Complex>>& moves) {
  DivisorSpec out = base;
  for (const auto& [j, delta] : moves) out.points[static_cast<std::size_t>(j)] = spec.reduce(base.points[static_cast<std::size_t>(j)] + delta);
  return out;
}

VortexSolution solve_at(const TorusSpec& spec, const QuantizationSpec& q, const DivisorSpec& point,
                        const MetricOptions& options, const ScalarField* warm) {
  vortexpde::SolverOptions so;
  so.tol = options.tol;
  so.warm_start = warm;
  return vortexpde::solve_vortex(spec, q, point, so);
}

/// sqrt(h) * (phi_dot / phi)_singular for velocity pdot of point j.
ComplexField singular_ratio_sqrt_h(const TorusSpec& spec, const DivisorSpec& divisor, int j, Complex pdot) {
  const int N = spec.resolution;
  const double im = spec.modulus.imag();
  const double log_eta = geometry::log_abs_dedekind_eta(spec.modulus);
  const double L = spec.scale;
  const int nj = divisor.multiplicities[static_cast<std::size_t>(j)];
  ComplexField out(spec.size(), Complex(0.0, 0.0));
  if (pdot == Complex(0.0, 0.0)) return out;
  for (int jj = 0; jj < N; ++jj) {
    for (int i = 0; i < N; ++i) {
      const Complex z = spec.point(i, jj);
      double others = 1.0;
      Complex own_z = 0.0;    // sqrt(h) * Z_j
      double own_abs = 0.0;   // sqrt(h) restricted to point j
      double own_imw = 0.0;
      for (std::size_t k = 0; k < divisor.points.size(); ++k) {
        const int n = divisor.multiplicities[k];
        const Complex w = spec.centered_offset(z, divisor.points[k]);
        const geometry::ThetaValue th = geometry::jacobi_theta1(kPi * w, spec.modulus);
        const double e = std::exp(-kPi * n * w.imag() * w.imag() / im - n * log_eta);
        const double a = std::abs(th.value);
        if (static_cast<int>(k) == j) {
          own_abs = std::pow(a, n) * e;
          own_imw = w.imag();
          const Complex phase = a > 0.0 ? std::conj(th.value) / a : Complex(0.0, 0.0);
          own_z = std::pow(a, n - 1) * e * phase * th.derivative * (kPi / L);
        } else {
          others *= std::pow(a, n) * e;
        }
      }
      const Complex linear = Complex(0.0, 2.0 * kPi / spec.area) * (L * own_imw);
      out[static_cast<std::size_t>(jj) * static_cast<std::size_t>(N) + static_cast<std::size_t>(i)] =
          -static_cast<double>(nj) * pdot * others * (own_z + own_abs * linear);
    }
  }
  return out;
}

void check_background(const ModuliTangent& a, const ModuliTangent& b) {
  if (!(a.spec == b.spec) || a.background_tau != b.background_tau || a.background_points != b.background_points ||
      a.background_multiplicities != b.background_multiplicities) {
    throw Error(ErrorKind::BackgroundMismatch, "tangents live over different background solutions");
  }
}

ModuliTangent combine(double a, const ModuliTangent& x, double b, const ModuliTangent& y) {
  ModuliTangent t = x;
  t.a_dot_x = a * x.a_dot_x + b * y.a_dot_x;
  t.a_dot_y = a * x.a_dot_y + b * y.a_dot_y;
  t.psi_re = a * x.psi_re + b * y.psi_re;
  t.psi_im = a * x.psi_im + b * y.psi_im;
  t.coulomb_residual = std::max(x.coulomb_residual, y.coulomb_residual);
  return t;
}

Complex chart_direction(int a) { return (a % 2 == 0) ? Complex(1.0, 0.0) : Complex(0.0, 1.0); }

}  // namespace

std::string to_string(Route route) { return route == Route::Deformation ? "deformation" : "fiberint"; }

double moduli_step(const TorusSpec& spec, const MetricOptions& options) {
  if (!(options.step_fraction > 0.0)) throw Error(ErrorKind::InvalidArgument, "moduli step must be positive");
  const double diameter = spec.scale * std::max(std::abs(1.0 + spec.modulus), std::abs(1.0 - spec.modulus));
  return options.step_fraction * diameter;
}

ModuliTangent tangent_by_fd(const VortexSolution& center, const VortexSolution& plus, const VortexSolution& minus,
                            int point_index, Complex direction, double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "stencil step must be positive");
  if (point_index < 0 || static_cast<std::size_t>(point_index) >= center.divisor.points.size()) {
    throw Error(ErrorKind::InvalidArgument, "point index out of range");
  }
  for (const VortexSolution* s : {&plus, &minus}) {
    if (!(s->spec == center.spec) || s->q.tau != center.q.tau ||
        s->divisor.multiplicities != center.divisor.multiplicities) {
      throw Error(ErrorKind::StencilInconsistent, "stencil solutions belong to different families");
    }
  }
  const double rmax = std::max({center.residual_norm, plus.residual_norm, minus.residual_norm});
  const double rmin = std::min({center.residual_norm, plus.residual_norm, minus.residual_norm});
  if (rmax > 10.0 * std::max(rmin, kResidualFloor)) {
    throw Error(ErrorKind::StencilInconsistent, "stencil residuals differ by more than a factor 10");
  }

  const TorusSpec& spec = center.spec;
  const double tau = center.q.tau;
  const std::size_t n = spec.size();
  geometry::Fourier fourier(spec);

  ScalarField vdot = (1.0 / (2.0 * step)) * (plus.v - minus.v);
  ScalarField rho(spec), sqrt_rho(spec), sqrt_te(spec);
  for (std::size_t k = 0; k < n; ++k) {
    sqrt_te[k] = std::sqrt(tau * std::exp(center.v[k]));
    rho[k] = tau * center.h[k] * std::exp(center.v[k]);
    sqrt_rho[k] = std::sqrt(rho[k]);
  }

  const ComplexField sh_eta = singular_ratio_sqrt_h(spec, center.divisor, point_index, direction);
  ScalarField psi_s_re(spec), psi_s_im(spec), forcing(spec);
  for (std::size_t k = 0; k < n; ++k) {
    psi_s_re[k] = sqrt_te[k] * sh_eta[k].real();
    psi_s_im[k] = sqrt_te[k] * sh_eta[k].imag();
    forcing[k] = -sqrt_rho[k] * psi_s_im[k];
  }

  // Coulomb gauge: (|phi|^2 - Delta) chi = -|phi|^2 Im(phi_dot/phi)_singular
  ScalarField chi(spec, 0.0);
  if (forcing.max_abs() > 0.0) vortexpde::solve_screened(fourier, rho, forcing, chi, 1e-14, 2000);

  ModuliTangent t;
  t.spec = spec;
  t.background_points = center.divisor.points;
  t.background_multiplicities = center.divisor.multiplicities;
  t.background_tau = tau;
  t.a_dot_x = ScalarField(spec);
  t.a_dot_y = ScalarField(spec);
  t.psi_re = ScalarField(spec);
  t.psi_im = ScalarField(spec);

  ScalarField vx(spec), vy(spec), cx(spec), cy(spec), lap_chi(spec);
  fourier.gradient(vdot.values(), vx.values(), vy.values());
  fourier.gradient(chi.values(), cx.values(), cy.values());
  fourier.laplacian(chi.values(), lap_chi.values());

  const double nj = center.divisor.multiplicities[static_cast<std::size_t>(point_index)];
  const double ax_s = 2.0 * kPi * nj * direction.imag() / spec.area;
  const double ay_s = -2.0 * kPi * nj * direction.real() / spec.area;
  double gauge_res = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    t.a_dot_x[k] = ax_s + 0.5 * vy[k] + cx[k];
    t.a_dot_y[k] = ay_s - 0.5 * vx[k] + cy[k];
    t.psi_re[k] = psi_s_re[k] + sqrt_rho[k] * 0.5 * vdot[k];
    t.psi_im[k] = psi_s_im[k] + sqrt_rho[k] * chi[k];
    gauge_res = std::max(gauge_res, std::fabs(lap_chi[k] - sqrt_rho[k] * t.psi_im[k]));
  }
  const double scale = forcing.max_abs();
  t.coulomb_residual = scale > 0.0 ? gauge_res / scale : gauge_res;
  return t;
}

double l2_pairing(const ModuliTangent& t1, const ModuliTangent& t2) {
  check_background(t1, t2);
  double s = 0.0;
  for (std::size_t k = 0; k < t1.a_dot_x.size(); ++k) {
    s += t1.a_dot_x[k] * t2.a_dot_x[k] + t1.a_dot_y[k] * t2.a_dot_y[k] + t1.psi_re[k] * t2.psi_re[k] +
         t1.psi_im[k] * t2.psi_im[k];
  }
  return kPairingNormalization * s * t1.spec.cell_area();
}

double omega_pairing(const ModuliTangent& t1, const ModuliTangent& t2) {
  check_background(t1, t2);
  double s = 0.0;
  for (std::size_t k = 0; k < t1.a_dot_x.size(); ++k) {
    s += -t1.a_dot_y[k] * t2.a_dot_x[k] + t1.a_dot_x[k] * t2.a_dot_y[k] + t1.psi_re[k] * t2.psi_im[k] -
         t1.psi_im[k] * t2.psi_re[k];
  }
  return kPairingNormalization * s * t1.spec.cell_area();
}

ModuliTangent apply_j(const ModuliTangent& t) {
  ModuliTangent out = t;
  out.a_dot_x = -1.0 * t.a_dot_y;
  out.a_dot_y = t.a_dot_x;
  out.psi_re = -1.0 * t.psi_im;
  out.psi_im = t.psi_re;
  return out;
}

TangentFrame tangent_frame(const TorusSpec& spec, const QuantizationSpec& q, const DivisorSpec& point,
                           const MetricOptions& options) {
  require_distinct_chart(point);
  const double h = moduli_step(spec, options);
  TangentFrame frame{solve_at(spec, q, point, options, nullptr), {}, 1};
  const int m = 2 * static_cast<int>(point.points.size());
  for (int a = 0; a < m; ++a) {
    const int j = a / 2;
    const Complex e = chart_direction(a);
    auto tangent_with = [&](double step) {
      const VortexSolution plus = solve_at(spec, q, displaced(spec, point, {{j, step * e}}), options, &frame.background.v);
      const VortexSolution minus =
          solve_at(spec, q, displaced(spec, point, {{j, -step * e}}), options, &frame.background.v);
      frame.solves += 2;
      return tangent_by_fd(frame.background, plus, minus, j, e, step);
    };
    ModuliTangent t = tangent_with(h);
    if (options.richardson) t = combine(4.0 / 3.0, t, -1.0 / 3.0, tangent_with(2.0 * h));
    frame.tangents.push_back(std::move(t));
  }
  return frame;
}

MetricSample omega_deformation(const TorusSpec& spec, const QuantizationSpec& q, const DivisorSpec& point,
                               const MetricOptions& options) {
  const TangentFrame frame = tangent_frame(spec, q, point, options);
  const std::size_t m = frame.tangents.size();
  MetricSample s;
  s.moduli_point = point;
  s.route = Route::Deformation;
  s.solves = frame.solves;
  s.omega.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t a = 0; a < m; ++a) {
    s.coulomb_residual = std::max(s.coulomb_residual, frame.tangents[a].coulomb_residual);
    for (std::size_t b = a + 1; b < m; ++b) {
      const double w = omega_pairing(frame.tangents[a], frame.tangents[b]);
      s.omega[a][b] = w;
      s.omega[b][a] = -w;
    }
  }
  return s;
}

MetricSample omega_fiberint(const TorusSpec& spec, const QuantizationSpec& q, const DivisorSpec& point,
                            const MetricOptions& options) {
  require_distinct_chart(point);
  const double h = moduli_step(spec, options);
  const int m = 2 * static_cast<int>(point.points.size());
  const VortexSolution center = solve_at(spec, q, point, options, nullptr);
  int solves = 1;

  auto solve_moves = [&](const std::vector<std::pair<int, Complex>>& moves) {
    ++solves;
    VortexSolution s = solve_at(spec, q, displaced(spec, point, moves), options, &center.v);
    if (s.residual_norm > 10.0 * std::max(center.residual_norm, kResidualFloor)) {
      throw Error(ErrorKind::StencilInconsistent, "stencil residuals differ by more than a factor 10");
    }
    return s.v;
  };
  auto move = [&](int a, double sign) { return std::pair<int, Complex>{a / 2, sign * h * chart_direction(a)}; };

  // first derivatives and the moduli Hessian of v
  std::vector<ScalarField> vplus, vminus, d1;
  for (int a = 0; a < m; ++a) {
    vplus.push_back(solve_moves({move(a, 1.0)}));
    vminus.push_back(solve_moves({move(a, -1.0)}));
    d1.push_back((1.0 / (2.0 * h)) * (vplus.back() - vminus.back()));
  }
  std::vector<std::vector<ScalarField>> hess(static_cast<std::size_t>(m), std::vector<ScalarField>(static_cast<std::size_t>(m)));
  for (int a = 0; a < m; ++a) {
    hess[a][a] = (1.0 / (h * h)) * (vplus[a] + vminus[a] - 2.0 * center.v);
    for (int b = a + 1; b < m; ++b) {
      const ScalarField pp = solve_moves({move(a, 1.0), move(b, 1.0)});
      const ScalarField pm = solve_moves({move(a, 1.0), move(b, -1.0)});
      const ScalarField mp = solve_moves({move(a, -1.0), move(b, 1.0)});
      const ScalarField mm = solve_moves({move(a, -1.0), move(b, -1.0)});
      hess[a][b] = (1.0 / (4.0 * h * h)) * (pp - pm - mp + mm);
      hess[b][a] = hess[a][b];
    }
  }

  geometry::Fourier fourier(spec);
  // mixed moduli/surface second derivatives u_{a x}, u_{a y}
  std::vector<ScalarField> ux, uy;
  for (int a = 0; a < m; ++a) {
    ScalarField gx(spec), gy(spec);
    fourier.gradient(d1[a].values(), gx.values(), gy.values());
    if (a % 2 == 1) {
      const double n = point.multiplicities[static_cast<std::size_t>(a / 2)];
      for (std::size_t k = 0; k < gy.size(); ++k) gy[k] += 4.0 * kPi * n / spec.area;
    }
    ux.push_back(std::move(gx));
    uy.push_back(std::move(gy));
  }
  // singular part of the moduli Hessian: u_{p_y p_y} = -4 pi n / V
  for (int a = 1; a < m; a += 2) {
    const double n = point.multiplicities[static_cast<std::size_t>(a / 2)];
    for (std::size_t k = 0; k < hess[a][a].size(); ++k) hess[a][a][k] -= 4.0 * kPi * n / spec.area;
  }

  // Coordinates 0..m-1 are moduli, m = x and m+1 = y; complex variable c/2, real part iff c even.
  const int X = m, Y = m + 1;
  auto u2 = [&](int c1, int c2) -> const ScalarField& {
    if (c1 >= m && c2 >= m) throw Error(ErrorKind::InvalidArgument, "surface Hessian not needed");
    if (c1 >= m) std::swap(c1, c2);
    if (c2 == X) return ux[c1];
    if (c2 == Y) return uy[c1];
    return hess[c1][c2];
  };
  auto is_t = [](int c) { return c % 2 == 1; };
  auto partner = [](int c) { return c ^ 1; };
  // F(c1, c2) for real coordinates of distinct or equal complex variables
  std::function<ScalarField(int, int)> curv = [&](int c1, int c2) -> ScalarField {
    if (!is_t(c1) && is_t(c2)) {  // F(s_A, t_B) = -(u_{sA sB} + u_{tA tB}) / 2
      return -0.5 * (u2(c1, partner(c2)) + u2(partner(c1), c2));
    }
    if (is_t(c1) && !is_t(c2)) return -1.0 * curv(c2, c1);
    if (!is_t(c1)) {  // F(s_A, s_B) = (u_{sA tB} - u_{tA sB}) / 2
      return 0.5 * (u2(c1, partner(c2)) - u2(partner(c1), c2));
    }
    // F(t_A, t_B) = (u_{sA tB} - u_{sB tA}) / 2
    return 0.5 * (u2(partner(c1), c2) - u2(partner(c2), c1));
  };

  ScalarField f12(spec);
  for (std::size_t k = 0; k < f12.size(); ++k) f12[k] = 0.5 * (q.tau - center.observables.higgs_density[k]);

  MetricSample s;
  s.moduli_point = point;
  s.route = Route::FiberIntegration;
  s.omega.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m), 0.0));
  std::vector<ScalarField> fa1, fa2;
  for (int a = 0; a < m; ++a) {
    fa1.push_back(curv(a, X));
    fa2.push_back(curv(a, Y));
  }
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const ScalarField fab = curv(a, b);
      ScalarField integrand(spec);
      for (std::size_t k = 0; k < integrand.size(); ++k) {
        integrand[k] = -q.tau * fab[k] +
                       2.0 * (fab[k] * f12[k] - fa1[a][k] * fa2[b][k] + fa2[a][k] * fa1[b][k]);
      }
      const double w = -geometry::integrate(integrand) / (4.0 * kPi);
      s.omega[a][b] = w;
      s.omega[b][a] = -w;
    }
  }
  s.solves = solves;
  return s;
}

VolumeReport volume_d1(const TorusSpec& spec, const QuantizationSpec& q, int moduli_grid, const MetricOptions& options,
                       Route route) {
  if (moduli_grid < 4) throw Error(ErrorKind::InvalidModuliGrid, "moduli grid must be at least 4 x 4");
  if (q.degree != 1 || q.genus != 1) throw Error(ErrorKind::WrongDegreeContext, "volume_d1 needs g = 1 and d = 1");
  VolumeReport r;
  r.moduli_grid = moduli_grid;
  const double M = moduli_grid;
  double acc = 0.0;
  for (int b = 0; b < moduli_grid; ++b) {
    for (int a = 0; a < moduli_grid; ++a) {
      const DivisorSpec p = vortexpde::make_divisor(spec, {spec.from_lattice((a + 0.5) / M, (b + 0.5) / M)});
      const MetricSample s =
          route == Route::Deformation ? omega_deformation(spec, q, p, options) : omega_fiberint(spec, q, p, options);
      r.density.push_back(s.omega[0][1]);
      acc += s.omega[0][1];
    }
  }
  r.density_min = *std::min_element(r.density.begin(), r.density.end());
  r.density_max = *std::max_element(r.density.begin(), r.density.end());
  r.volume = acc * spec.area / (M * M);
  return r;
}

}  // namespace vortexq::modulimetric
