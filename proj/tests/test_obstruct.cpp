#include <doctest.h>

#include "vortexq/error.hpp"
#include "vortexq/obstruct.hpp"

using namespace vortexq;
using namespace vortexq::obstruct;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("chern_exterior_power: examples") {
  const auto e3 = mattuck_pushforward(3);
  CHECK(e3.c1_theta == -1);
  CHECK(e3.c2_theta2 == make_rational(1, 2));
  CHECK(chern_exterior_power(e3, 2).c1_theta == -2);
  CHECK(chern_exterior_power(e3, 2).rank == 3);
  CHECK(chern_exterior_power(e3, 1) == e3);
  for (long r = 1; r <= 8; ++r) {
    const auto det = chern_exterior_power(mattuck_pushforward(r), r);
    CHECK(det.rank == 1);
    CHECK(det.c1_theta == -1);
    CHECK(det.c2_theta2 == 0);
  }
  CHECK(kind_of([&] { chern_exterior_power(e3, 4); }) == ErrorKind::DegreeOutOfRange);
  CHECK(kind_of([&] { chern_exterior_power(e3, 0); }) == ErrorKind::DegreeOutOfRange);
}

TEST_CASE("chern_root_oracle: examples") {
  const auto a = chern_root_oracle(2, 2);
  CHECK(a.c1_coeff == 1);
  CHECK(a.alpha == 0);
  CHECK(a.beta == 0);
  const auto b = chern_root_oracle(4, 2);
  CHECK(b.rank == 6);
  CHECK(b.c1_coeff == 3);
  CHECK(b.equal);
  CHECK(kind_of([] { chern_root_oracle(9, 2); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("property: closed formula equals the root expansion") {
  for (long r = 1; r <= 8; ++r) {
    for (long d = 1; d <= r; ++d) {
      const auto rec = chern_root_oracle(r, d);
      CHECK(rec.symmetric);
      CHECK(rec.equal);
      CHECK(rec.rank == binomial(r, d));
    }
  }
}

TEST_CASE("proj_flat_test: examples") {
  const auto flat = proj_flat_test(2, 3, 3);
  CHECK(flat.obstruction == 0);
  CHECK(flat.flat_possible);
  const auto r = proj_flat_test(2, 4, 2);
  CHECK(r.lhs == 45);
  CHECK(r.rhs == 48);
  CHECK(r.rhs_closed == 48);
  CHECK(r.obstruction == -3);
  CHECK_FALSE(r.flat_possible);
  CHECK(kind_of([] { proj_flat_test(1, 3, 2); }) == ErrorKind::HypothesisViolation);
  CHECK(kind_of([] { proj_flat_test(4, 3, 2); }) == ErrorKind::HypothesisViolation);
  CHECK(kind_of([] { proj_flat_test(2, 3, 4); }) == ErrorKind::HypothesisViolation);
  CHECK(kind_of([] { proj_flat_test(2, 3, 0); }) == ErrorKind::HypothesisViolation);
}

TEST_CASE("property: obstruction vanishes exactly at k = d") {
  for (long g = 2; g <= 4; ++g) {
    for (long k = g; k <= 12; ++k) {
      for (long d = 1; d <= k; ++d) {
        const auto r = proj_flat_test(g, k, d);
        CHECK((r.obstruction == 0) == (k == d));
        CHECK(r.flat_possible == r.closed_form_verdict);
        CHECK(r.rhs == r.rhs_closed);
        CHECK(r.exterior.rank == binomial(k, d));
      }
    }
  }
}
