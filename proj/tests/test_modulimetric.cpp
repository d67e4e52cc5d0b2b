#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vortexq/error.hpp"
#include "vortexq/modulimetric.hpp"
#include "vortexq/symcoh.hpp"

using namespace vortexq;
using namespace vortexq::modulimetric;
using vortexpde::make_divisor;
using vortexpde::solve_vortex;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

struct Stencil {
  VortexSolution center, plus, minus;
};

Stencil stencil_d1(const TorusSpec& spec, const QuantizationSpec& q, Complex p, Complex dir, double h) {
  return {solve_vortex(spec, q, make_divisor(spec, {p})), solve_vortex(spec, q, make_divisor(spec, {p + h * dir})),
          solve_vortex(spec, q, make_divisor(spec, {p - h * dir}))};
}

double field_diff(const ModuliTangent& a, const ModuliTangent& b) {
  return std::max({(a.a_dot_x - b.a_dot_x).max_abs(), (a.a_dot_y - b.a_dot_y).max_abs(),
                   (a.psi_re - b.psi_re).max_abs(), (a.psi_im - b.psi_im).max_abs()});
}

double field_scale(const ModuliTangent& a) {
  return std::max({a.a_dot_x.max_abs(), a.a_dot_y.max_abs(), a.psi_re.max_abs(), a.psi_im.max_abs()});
}

void check_antisymmetric(const MetricSample& s) {
  for (std::size_t a = 0; a < s.omega.size(); ++a) {
    CHECK(s.omega[a][a] == 0.0);
    for (std::size_t b = 0; b < s.omega.size(); ++b) CHECK(s.omega[a][b] == -s.omega[b][a]);
  }
}

double max_rel_diff(const MetricSample& x, const MetricSample& y) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t a = 0; a < x.omega.size(); ++a) {
    for (std::size_t b = 0; b < x.omega.size(); ++b) {
      diff = std::max(diff, std::fabs(x.omega[a][b] - y.omega[a][b]));
      scale = std::max(scale, std::fabs(x.omega[a][b]));
    }
  }
  return diff / scale;
}

}  // namespace

TEST_CASE("tangent_by_fd: zero direction, Coulomb gauge, stencil checks") {
  const auto spec = geometry::build_torus({0, 1}, 1.0, 64);
  const auto q = QuantizationSpec::from_tau(1, 1, 8 * kPi, 1.0);
  const Complex p = spec.from_lattice(0.3, 0.4);
  const double h = moduli_step(spec, {});
  const auto st = stencil_d1(spec, q, p, {1, 0}, h);

  const auto zero = tangent_by_fd(st.center, st.center, st.center, 0, {0, 0}, h);
  CHECK(field_scale(zero) == 0.0);
  CHECK(l2_pairing(zero, zero) == 0.0);

  const auto t = tangent_by_fd(st.center, st.plus, st.minus, 0, {1, 0}, h);
  CHECK(t.coulomb_residual <= 1e-8);
  CHECK(l2_pairing(t, t) > 0.0);
  CHECK(omega_pairing(t, t) == 0.0);
  // exact translation identity: |d/dx|^2 = tau / 2 under the 1/(2 pi) normalization
  CHECK(l2_pairing(t, t) == doctest::Approx(q.tau / 2).epsilon(1e-6));

  // a solution from another coupling does not belong to the family
  const auto other = solve_vortex(spec, QuantizationSpec::from_tau(1, 1, 9 * kPi, 1.0), make_divisor(spec, {p + h}));
  CHECK(kind_of([&] { tangent_by_fd(st.center, other, st.minus, 0, {1, 0}, h); }) == ErrorKind::StencilInconsistent);
}

TEST_CASE("l2_pairing: background mismatch") {
  const auto spec = geometry::build_torus({0, 1}, 1.0, 32);
  const auto q = QuantizationSpec::from_tau(1, 1, 8 * kPi, 1.0);
  const double h = moduli_step(spec, {});
  const auto a = stencil_d1(spec, q, spec.from_lattice(0.3, 0.4), {1, 0}, h);
  const auto b = stencil_d1(spec, q, spec.from_lattice(0.6, 0.1), {1, 0}, h);
  const auto ta = tangent_by_fd(a.center, a.plus, a.minus, 0, {1, 0}, h);
  const auto tb = tangent_by_fd(b.center, b.plus, b.minus, 0, {1, 0}, h);
  CHECK(kind_of([&] { l2_pairing(ta, tb); }) == ErrorKind::BackgroundMismatch);
  CHECK(kind_of([&] { omega_pairing(ta, tb); }) == ErrorKind::BackgroundMismatch);
}

TEST_CASE("tangent_by_fd: translation covariance on the torus") {
  const int N = 64;
  const auto spec = geometry::build_torus({0.2, 1.1}, 1.0, N);
  const auto q = QuantizationSpec::from_tau(1, 1, 7 * kPi, 1.0);
  const double h = moduli_step(spec, {});
  const Complex p = spec.from_lattice(0.31, 0.22);
  const int di = 9, dj = 4;
  const Complex s = spec.from_lattice(static_cast<double>(di) / N, static_cast<double>(dj) / N);
  for (Complex dir : {Complex(1, 0), Complex(0, 1)}) {
    const auto a = stencil_d1(spec, q, p, dir, h);
    const auto b = stencil_d1(spec, q, p + s, dir, h);
    const auto ta = tangent_by_fd(a.center, a.plus, a.minus, 0, dir, h);
    const auto tb = tangent_by_fd(b.center, b.plus, b.minus, 0, dir, h);
    double worst = 0.0;
    for (int j = 0; j < N; ++j) {
      for (int i = 0; i < N; ++i) {
        const int I = (i + di) % N, J = (j + dj) % N;
        worst = std::max({worst, std::fabs(tb.a_dot_x(I, J) - ta.a_dot_x(i, j)),
                          std::fabs(tb.a_dot_y(I, J) - ta.a_dot_y(i, j)), std::fabs(tb.psi_re(I, J) - ta.psi_re(i, j)),
                          std::fabs(tb.psi_im(I, J) - ta.psi_im(i, j))});
      }
    }
    CHECK(worst <= 1e-3 * field_scale(ta));
  }
}

TEST_CASE("tangent_by_fd: central differences are second order in the step") {
  const auto spec = geometry::build_torus({0, 1}, 1.0, 64);
  const auto q = QuantizationSpec::from_tau(1, 2, 12 * kPi, 1.0);
  const std::vector<Complex> pts = {spec.from_lattice(0.2, 0.3), spec.from_lattice(0.45, 0.5)};
  const auto center = solve_vortex(spec, q, make_divisor(spec, pts));
  auto tangent = [&](double h) {
    const auto plus = solve_vortex(spec, q, make_divisor(spec, {pts[0] + h, pts[1]}));
    const auto minus = solve_vortex(spec, q, make_divisor(spec, {pts[0] - h, pts[1]}));
    return tangent_by_fd(center, plus, minus, 0, {1, 0}, h);
  };
  const auto t1 = tangent(0.04), t2 = tangent(0.02), t3 = tangent(0.01);
  const double d12 = field_diff(t1, t2), d23 = field_diff(t2, t3);
  MESSAGE("successive differences " << d12 << " " << d23);
  CHECK(d12 / d23 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("omega: J wiring, antisymmetry and positivity") {
  const auto spec = geometry::build_torus({0.1, 1.2}, 1.0, 64);
  const auto q = QuantizationSpec::from_tau(1, 2, 13 * kPi, 1.0);
  const auto point = make_divisor(spec, {spec.from_lattice(0.15, 0.2), spec.from_lattice(0.6, 0.7)});
  const auto frame = tangent_frame(spec, q, point);
  REQUIRE(frame.tangents.size() == 4);
  for (const auto& t : frame.tangents) {
    // g(t, t) = omega(t, J t)
    CHECK(omega_pairing(t, apply_j(t)) == doctest::Approx(l2_pairing(t, t)).epsilon(1e-8));
    CHECK(omega_pairing(t, t) == 0.0);
    CHECK(l2_pairing(t, t) > 0.0);
    CHECK(t.coulomb_residual <= 1e-8);
  }
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      CHECK(l2_pairing(frame.tangents[a], frame.tangents[b]) ==
            doctest::Approx(l2_pairing(frame.tangents[b], frame.tangents[a])).epsilon(1e-12));
    }
  }
  check_antisymmetric(omega_deformation(spec, q, point));
  check_antisymmetric(omega_fiberint(spec, q, point));
}

TEST_CASE("omega: routes agree and grow with tau at d = 1") {
  const auto spec = geometry::build_torus({0, 1}, 1.0, 64);
  const auto point = make_divisor(spec, {spec.from_lattice(0.37, 0.61)});
  double previous = 0.0;
  for (double tau : {5 * kPi, 6 * kPi, 8 * kPi}) {
    const auto q = QuantizationSpec::from_tau(1, 1, tau, 1.0);
    const auto dfm = omega_deformation(spec, q, point);
    const auto fib = omega_fiberint(spec, q, point);
    CHECK(max_rel_diff(dfm, fib) <= 1e-2);
    CHECK(dfm.omega[0][1] > previous);
    CHECK(fib.omega[0][1] == doctest::Approx(tau / 2).epsilon(1e-3));
    previous = dfm.omega[0][1];
  }
}

TEST_CASE("volume_d1: Kahler class prediction and moduli independence") {
  for (double tau : {6 * kPi, 8 * kPi}) {
    const auto spec = geometry::build_torus({0, 1}, 1.0, 64);
    const auto q = QuantizationSpec::from_tau(1, 1, tau, 1.0);
    const auto r = volume_d1(spec, q, 8);
    const double target = 2 * kPi * to_double(symcoh::pair_d1(symcoh::kahler_class(q)));
    CHECK(target == doctest::Approx(tau / 2).epsilon(1e-15));
    CHECK(std::fabs(r.volume / target - 1.0) <= 1e-2);
    CHECK((r.density_max - r.density_min) <= 1e-3 * r.density_max);
  }
  // a sheared modulus at the same area and coupling
  const auto sheared = geometry::build_torus({0.3, 1.2}, 1.0, 64);
  const auto r = volume_d1(sheared, QuantizationSpec::from_tau(1, 1, 8 * kPi, 1.0), 4);
  CHECK(std::fabs(r.volume / (4 * kPi) - 1.0) <= 1e-2);
}

TEST_CASE("volume_d1: approach to the dissolved limit and preconditions") {
  const auto spec = geometry::build_torus({0, 1}, 1.0, 64);
  double previous = 1e300;
  for (double excess : {1.0, 0.3, 0.05}) {
    const auto r = volume_d1(spec, QuantizationSpec::from_tau(1, 1, 4 * kPi + excess, 1.0), 4);
    CHECK(r.volume > 2 * kPi);
    CHECK(r.volume < previous);
    CHECK(r.volume == doctest::Approx(2 * kPi + excess / 2).epsilon(1e-2));
    previous = r.volume;
  }
  CHECK(kind_of([&] { volume_d1(spec, QuantizationSpec::from_tau(1, 1, 8 * kPi, 1.0), 3); }) ==
        ErrorKind::InvalidModuliGrid);
  CHECK(kind_of([&] { volume_d1(spec, QuantizationSpec::from_tau(1, 2, 12 * kPi, 1.0), 4); }) ==
        ErrorKind::WrongDegreeContext);
  CHECK(kind_of([&] { volume_d1(spec, QuantizationSpec::from_tau(2, 1, 8 * kPi, 1.0), 4); }) ==
        ErrorKind::WrongDegreeContext);
}

TEST_CASE("property: route equivalence at random d = 2 points") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const auto spec = geometry::build_torus({0.25, 0.95}, 1.0, 64);
  const auto q = QuantizationSpec::from_tau(1, 2, 12 * kPi, 1.0);
  for (int trial = 0; trial < 2; ++trial) {
    const auto point = make_divisor(spec, {spec.from_lattice(uni(rng), uni(rng)), spec.from_lattice(uni(rng), uni(rng))});
    CHECK(max_rel_diff(omega_deformation(spec, q, point), omega_fiberint(spec, q, point)) <= 1e-2);
  }
}
