#include <doctest.h>

#include <numbers>

#include "vortexq/error.hpp"
#include "vortexq/symcoh.hpp"

using namespace vortexq;
using namespace vortexq::symcoh;

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

QuantizationSpec level_spec(long g, long d, long k) { return QuantizationSpec::from_level(g, d, Rational(k), 1.0); }

H2Class combo(long g, long d, long theta, Rational eta) {
  return Rational(theta) * H2Class::theta(g, d) + eta * H2Class::eta(g, d);
}

}  // namespace

TEST_CASE("H2Class: basis elements and antisymmetry") {
  const auto th = H2Class::theta(3, 2);
  CHECK(th.antisymmetric());
  CHECK(th.eta_coeff() == 0);
  CHECK(th.theta_multiple() == Rational(1));
  for (long i = 0; i < 3; ++i) {
    CHECK(th.lambda2(i, i + 3) == 1);
    CHECK(th.lambda2(i + 3, i) == -1);
  }
  const auto eta = H2Class::eta(3, 2);
  CHECK(eta.eta_coeff() == 1);
  CHECK(eta.theta_multiple() == Rational(0));

  H2Class c(2, 1);
  c.set_lambda2(0, 1, Rational(3));
  CHECK(c.antisymmetric());
  CHECK(c.lambda2(1, 0) == -3);
  CHECK_FALSE(c.theta_multiple().has_value());
  CHECK(kind_of([&] { c.set_lambda2(1, 1, Rational(1)); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { c += H2Class::eta(3, 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("kahler_class: examples and the eta sign") {
  CHECK(kahler_class(level_spec(1, 1, 2)) == combo(1, 1, 1, 1));
  CHECK(kahler_class(level_spec(2, 3, 5)) == combo(2, 3, 1, 2));
  CHECK(kahler_class(level_spec(4, 3, 3)) == H2Class::theta(4, 3));
  CHECK(kind_of([] { kahler_class(level_spec(1, 3, 2)); }) == ErrorKind::BradlowViolation);
  // the coupling route lands on the same class
  CHECK(kahler_class(QuantizationSpec::from_tau(1, 1, 8 * kPi, 1.0)) == combo(1, 1, 1, 1));

  for (long d = 1; d <= 6; ++d) {
    for (long k = d; k <= 10; ++k) {
      const Rational e = kahler_class(level_spec(2, d, k)).eta_coeff();
      CHECK((e > 0) == (k > d));
      CHECK((e == 0) == (k == d));
    }
  }
}

TEST_CASE("c1_tangent: examples") {
  CHECK(c1_tangent(0, 1) == combo(0, 1, 0, 2));
  CHECK(c1_tangent(1, 1) == combo(1, 1, -1, 1));
  CHECK(c1_tangent(3, 2) == combo(3, 2, -1, 0));
}

TEST_CASE("weil_check: integrality of the level") {
  CHECK(weil_check(8 * kPi, 1.0).level == 2);
  CHECK(weil_check(8 * kPi, 1.0).flat_torus_dim == 2);
  CHECK(weil_check(1.0, 4 * kPi).level == 1);
  CHECK(weil_check(8 * kPi, 1.0, 3).flat_torus_dim == 6);
  CHECK(kind_of([] { weil_check(2 * kPi, 1.0); }) == ErrorKind::NotPrequantizable);
  try {
    weil_check(2 * kPi, 1.0);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("1/2") != std::string::npos);
  }
  CHECK(weil_check(Rational(7)).level == 7);
  CHECK(kind_of([] { weil_check(make_rational(5, 3)); }) == ErrorKind::NotPrequantizable);
}

TEST_CASE("metaplectic_check: examples") {
  const auto a = metaplectic_check(0, 3);
  CHECK(a.closed_form);
  CHECK(a.certificate);
  CHECK_FALSE(metaplectic_check(1, 2).certificate);
  const auto b = metaplectic_check(3, 4);
  CHECK(b.eta_part_even);
  CHECK_FALSE(b.theta_part_even);
  CHECK_FALSE(b.certificate);
  CHECK(b.agree());
  // d = 1: the pairing 2 - 2g is always even
  const auto c = metaplectic_check(5, 1);
  REQUIRE(c.d1_pairing.has_value());
  CHECK(*c.d1_pairing == -8);
  CHECK(c.certificate);
}

TEST_CASE("property: metaplectic verdicts agree over the exhaustive sweep") {
  for (long g = 0; g <= 8; ++g) {
    for (long d = 1; d <= 8; ++d) {
      const auto v = metaplectic_check(g, d);
      CHECK(v.agree());
      CHECK(v.closed_form == (d == 1 || (g == 0 && d % 2 == 1)));
      CHECK(v.two_adic_factorial == legendre_two_adic_factorial(g));
      CHECK(v.two_pow_g_divides_factorial == (g == 0));
    }
  }
}

TEST_CASE("prequantum_class_check: examples") {
  const auto r = prequantum_class_check(level_spec(1, 1, 2));
  CHECK(r.holds);
  CHECK(r.lhs == combo(1, 1, 1, 1));
  CHECK(r.canonical == combo(1, 1, 1, -1));
  CHECK(r.deg_m == 2);
  CHECK(prequantum_class_check(level_spec(2, 2, 3)).rhs == combo(2, 2, 1, 1));
  CHECK(prequantum_class_check(level_spec(3, 2, 2)).lhs == H2Class::theta(3, 2));
  CHECK(kind_of([] { prequantum_class_check(level_spec(2, 3, 2)); }) == ErrorKind::BradlowViolation);
  CHECK(kind_of([] { prequantum_class_check(QuantizationSpec::from_level(1, 1, make_rational(5, 2), 1.0)); }) ==
        ErrorKind::NotPrequantizable);
}

TEST_CASE("property: prequantum identity over the exhaustive sweep") {
  long checked = 0;
  for (long g = 0; g <= 20; ++g) {
    for (long d = 1; d <= 20; ++d) {
      for (long k = d + 1; k <= 40; ++k) {
        const auto r = prequantum_class_check(level_spec(g, d, k));
        REQUIRE(r.holds);
        REQUIRE(r.lhs == r.rhs);
        ++checked;
      }
    }
  }
  CHECK(checked == 21 * (20 * 40 - 20 * 21 / 2));
}

TEST_CASE("ke_check: examples") {
  const auto compatible = ke_check(QuantizationSpec::from_tau(3, 1, 2.0, 4 * kPi));
  CHECK(compatible.level_matches);
  CHECK(compatible.compatible());
  const auto low = ke_check(QuantizationSpec::from_tau(3, 2, 2.0, 4 * kPi));
  CHECK(low.level_matches);
  CHECK_FALSE(low.genus_condition);
  for (double tau : {0.5, 8 * kPi, 100.0}) CHECK_FALSE(ke_check(QuantizationSpec::from_tau(1, 1, tau, 1.0)).compatible());
}

TEST_CASE("pair_d1: evaluations on the curve") {
  CHECK(pair_d1(H2Class::eta(4, 1)) == 1);
  CHECK(pair_d1(H2Class::theta(1, 1)) == 1);
  CHECK(pair_d1(H2Class::theta(4, 1)) == 4);
  CHECK(pair_d1(kahler_class(level_spec(1, 1, 2))) == 2);
  CHECK(pair_d1(c1_tangent(3, 1)) == -4);
  CHECK(kind_of([] { pair_d1(H2Class::eta(1, 2)); }) == ErrorKind::WrongDegreeContext);
}

TEST_CASE("theta powers: nilpotence and top degree") {
  for (long g = 0; g <= 6; ++g) {
    CHECK(theta_power(g, g + 1).is_zero());
    Integer factorial = 1;
    for (long i = 2; i <= g; ++i) factorial *= i;
    CHECK(theta_power(g, g).top_coefficient() == factorial);
    // repeated wedging agrees with theta_power
    ExteriorClass acc = ExteriorClass::one(g);
    const auto th = ExteriorClass::from_h2(H2Class::theta(g, 1));
    for (long n = 0; n <= g + 1; ++n) {
      CHECK(acc.terms() == theta_power(g, n).terms());
      acc = acc.wedge(th);
    }
  }
}
