#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "vortexq/error.hpp"
#include "vortexq/zetadet.hpp"

using namespace vortexq;
using namespace vortexq::zetadet;

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

const Complex kHex(0.5, std::sqrt(3.0) / 2);

// z lies in [sum, sum + tail] up to the rounding of the two doubles; at t = 4
// the certified bracket is narrower than one ulp of the value.
void check_bracket(double z, const LatticeSum& s) {
  const double ulps = 8 * std::numeric_limits<double>::epsilon() * z;
  CHECK(z >= s.value - ulps);
  CHECK(z <= s.value + s.tail_bound + ulps);
  CHECK(std::fabs(z - s.value) <= 1e-10);
}

}  // namespace

TEST_CASE("dual_lattice_eigenvalues: square torus spectrum") {
  const auto spec = geometry::build_torus({0, 1}, 1.0, 128);
  const auto list = dual_lattice_eigenvalues(spec, 4 * 4 * kPi * kPi);
  REQUIRE(list.levels.size() >= 3);
  const double l1 = 4 * kPi * kPi;
  CHECK(list.levels[0].lambda == doctest::Approx(l1).epsilon(1e-15));
  CHECK(list.levels[0].multiplicity == 4);
  CHECK(list.levels[1].lambda == doctest::Approx(2 * l1).epsilon(1e-15));
  CHECK(list.levels[1].multiplicity == 4);
  CHECK(list.levels[2].lambda == doctest::Approx(4 * l1).epsilon(1e-15));
  CHECK(list.levels[2].multiplicity == 4);
  for (std::size_t i = 0; i < list.levels.size(); ++i) {
    CHECK(list.levels[i].lambda > 0.0);
    CHECK(list.levels[i].lambda <= 16 * kPi * kPi * (1 + 1e-15));
    if (i > 0) CHECK(list.levels[i].lambda > list.levels[i - 1].lambda);
  }
  CHECK(list.checked_levels >= 3);
  CHECK(list.grid_defect <= 1e-10);
}

TEST_CASE("dual_lattice_eigenvalues: area scaling and grid defect on skew tori") {
  for (Complex m : {Complex(0, 1), Complex(0, 2), kHex, Complex(0.3, 0.8)}) {
    const auto a = dual_lattice_eigenvalues(geometry::build_torus(m, 1.0, 128), 2000.0);
    const auto b = dual_lattice_eigenvalues(geometry::build_torus(m, 4.0, 128), 500.0);
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
      CHECK(b.levels[i].lambda == doctest::Approx(a.levels[i].lambda / 4).epsilon(1e-14));
      CHECK(b.levels[i].multiplicity == a.levels[i].multiplicity);
    }
    CHECK(a.grid_defect <= 1e-10);
    CHECK(b.grid_defect <= 1e-10);
  }
  // hexagonal torus: the first level carries six modes
  CHECK(dual_lattice_eigenvalues(geometry::build_torus(kHex, 1.0, 64), 100.0).levels[0].multiplicity == 6);
}

TEST_CASE("zeta_value: certified lattice sums") {
  const auto spec = geometry::build_torus({0, 1}, 1.0, 32);
  for (double t : {3.0, 4.0}) {
    const auto direct = direct_partial_sum(spec, t, 400.0);
    REQUIRE(direct.tail_bound <= 1e-10);
    check_bracket(zeta_value(spec, t), direct);
  }
  // the full 1e-10 bracket at t = 2 needs R = 4500 and lives in the acceptance suite
  const auto direct = direct_partial_sum(spec, 2.0, 1000.0);
  const double z2 = zeta_value(spec, 2.0);
  CHECK(z2 >= direct.value);
  CHECK(z2 <= direct.value + direct.tail_bound);
  CHECK(zeta_value_split(spec, 2.0, 1.0 / (4 * kPi)).tail_bound <= 1e-12);
  CHECK(zeta_value(spec, 3.0) > 0.0);
  CHECK(zeta_value(spec, 3.0) < z2);
  CHECK(zeta_value(spec, 4.0) < zeta_value(spec, 3.0));
  CHECK(kind_of([&] { zeta_value(spec, 1.0); }) == ErrorKind::ConvergenceDomain);
  CHECK(kind_of([&] { zeta_value(spec, 0.5); }) == ErrorKind::ConvergenceDomain);
}

TEST_CASE("zeta_value: independent of the split point") {
  const auto spec = geometry::build_torus({0.2, 1.3}, 2.5, 32);
  const double a = zeta_value_split(spec, 2.5, 0.05).value;
  const double b = zeta_value_split(spec, 2.5, 0.5).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-13));
}

TEST_CASE("zeta_prime_zero: routes, zeta(0) and Quillen factor") {
  double square = 0.0, rect = 0.0;
  for (Complex m : {Complex(0, 1), Complex(0, 2), kHex}) {
    const auto spec = geometry::build_torus(m, 1.0, 32);
    const auto r = zeta_prime_zero(spec, {2.0, 3.0});
    CHECK(std::fabs(r.zeta_zero + 1.0) <= 1e-8);
    CHECK(std::fabs(r.zeta_zero_mellin + 1.0) <= 1e-8);
    CHECK(std::fabs(r.zeta_zero_cutoff + 1.0) <= 1e-8);
    CHECK(std::fabs(r.zeta_prime_mellin - r.zeta_prime_cutoff) <= 1e-8);
    CHECK(r.method_spread <= 1e-8);
    CHECK(r.quillen_factor == std::exp(r.zeta_prime_zero));
    CHECK(r.quillen_factor > 0.0);
    CHECK(r.zeta_at.at(2.0) == zeta_value(spec, 2.0));
    CHECK(r.normalization == kNormalization);
    if (m == Complex(0, 1)) square = r.zeta_prime_zero;
    if (m == Complex(0, 2)) rect = r.zeta_prime_zero;
  }
  CHECK(std::fabs(square - rect) > 1e-3);
}

TEST_CASE("zeta_prime_zero: Kronecker limit formula on the square torus") {
  // zeta'(0) = -log(V Im tau |eta(tau)|^4), eta(i) = Gamma(1/4) / (2 pi^{3/4})
  const double eta_i = std::tgamma(0.25) / (2 * std::pow(kPi, 0.75));
  for (double V : {1.0, 3.0}) {
    const auto r = zeta_prime_zero(geometry::build_torus({0, 1}, V, 32));
    CHECK(r.zeta_prime_zero == doctest::Approx(-std::log(V * std::pow(eta_i, 4))).epsilon(1e-12));
  }
}

TEST_CASE("property: modular invariance") {
  for (Complex m : {Complex(0.1, 0.9), Complex(0.3, 1.7), Complex(-0.4, 0.6), kHex}) {
    const auto a = zeta_prime_zero(geometry::build_torus(m, 1.0, 32));
    const auto b = zeta_prime_zero(geometry::build_torus(-1.0 / m, 1.0, 32));
    const auto c = zeta_prime_zero(geometry::build_torus(m + 1.0, 1.0, 32));
    CHECK(std::fabs(a.zeta_prime_zero - b.zeta_prime_zero) <= 1e-8);
    CHECK(std::fabs(a.zeta_prime_zero - c.zeta_prime_zero) <= 1e-8);
    CHECK(std::fabs(zeta_value(geometry::build_torus(m, 1.0, 32), 2.0) -
                    zeta_value(geometry::build_torus(-1.0 / m, 1.0, 32), 2.0)) <= 1e-12);
  }
}

TEST_CASE("property: area dependence of zeta'(0)") {
  // V -> 5V scales zeta(s) by 5^s, so zeta'(0) shifts by zeta(0) log 5 = -log 5
  const auto a = zeta_prime_zero(geometry::build_torus({0.2, 1.1}, 1.0, 32));
  const auto b = zeta_prime_zero(geometry::build_torus({0.2, 1.1}, 5.0, 32));
  CHECK(b.zeta_prime_zero - a.zeta_prime_zero == doctest::Approx(-std::log(5.0)).epsilon(1e-12));
}
