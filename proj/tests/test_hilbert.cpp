#include <doctest.h>

#include <algorithm>
#include <random>

#include "vortexq/error.hpp"
#include "vortexq/hilbert.hpp"

using namespace vortexq;
using namespace vortexq::hilbert;

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

TEST_CASE("bundle_ledger: degree bookkeeping") {
  for (long g = 0; g <= 6; ++g) {
    for (long k = 1; k <= 10; ++k) {
      const auto b = bundle_ledger(g, k);
      CHECK(b.deg_qk == b.deg_q + b.deg_spin);
      CHECK(b.deg_m == b.deg_q - b.deg_spin);
      if (k > g - 1) CHECK(b.deg_qk > 2 * g - 2);
    }
  }
}

TEST_CASE("spinor_h0: examples") {
  CHECK(spinor_h0(2, 3, 0) == 3);
  CHECK(spinor_h0(3, 2, 1) == 3);
  CHECK(kind_of([] { spinor_h0(2, 3, 1); }) == ErrorKind::InvalidJump);
  CHECK(kind_of([] { spinor_h0(3, 2, 2); }) == ErrorKind::InvalidJump);
  CHECK(kind_of([] { spinor_h0(3, 2, -1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("hilbert_dim: examples") {
  const auto a = hilbert_dim(2, 2, 3, 0);
  CHECK(a.dim == 3);
  CHECK_FALSE(a.jumped);
  CHECK(hilbert_dim(1, 2, 3, 0).dim == 3);
  CHECK(kind_of([] { hilbert_dim(2, 2, 2, 0); }) == ErrorKind::BradlowViolation);
  const auto top = hilbert_dim(3, 1, 2, 1);
  CHECK(top.dim == 3);
  CHECK(top.generic_dim == 2);
  CHECK(top.jumped);
  CHECK(top.h0 - top.h1 == 2);
}

TEST_CASE("jump_stratum: examples") {
  const auto a = jump_stratum(3, 2);
  CHECK(a.jumps_possible);
  CHECK(a.unique_top_jump);
  CHECK(a.max_h1 == 1);
  const auto b = jump_stratum(2, 3);
  CHECK_FALSE(b.jumps_possible);
  CHECK(b.max_h1 == 0);
  const auto c = jump_stratum(5, 2);
  CHECK(c.jumps_possible);
  CHECK_FALSE(c.unique_top_jump);
  CHECK(c.max_h1 >= 1);
}

TEST_CASE("wedge_states: examples and restart") {
  using L = std::vector<long>;
  CHECK(wedge_states(3, 2) == std::vector<L>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(wedge_states(4, 4) == std::vector<L>{{1, 2, 3, 4}});
  CHECK(kind_of([] { wedge_states(2, 3); }) == ErrorKind::InvalidArgument);

  WedgeStates s(5, 3);
  long first = 0;
  while (s.next()) ++first;
  CHECK_FALSE(s.next().has_value());
  s.reset();
  long second = 0;
  while (s.next()) ++second;
  CHECK(first == 10);
  CHECK(second == 10);
  CHECK(s.count() == 10);
}

TEST_CASE("permutation_sign: alternating") {
  CHECK(permutation_sign({1, 2, 3}) == 1);
  CHECK(permutation_sign({2, 1, 3}) == -1);
  CHECK(permutation_sign({3, 1, 2}) == 1);
  CHECK(permutation_sign({1, 1, 2}) == 0);
  std::mt19937_64 rng(5);
  for (const auto& label : wedge_states(7, 4)) {
    auto p = label;
    std::shuffle(p.begin(), p.end(), rng);
    const int s = permutation_sign(p);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      auto q = p;
      std::swap(q[i], q[i + 1]);
      CHECK(permutation_sign(q) == -s);
    }
  }
}

TEST_CASE("property: label count equals the dimension") {
  for (long g = 0; g <= 8; ++g) {
    for (long k = 1; k <= 12; ++k) {
      const long max_h1 = jump_stratum(g, k).max_h1;
      for (long h1 = 0; h1 <= max_h1 && k + h1 <= 12; ++h1) {
        for (long d = 1; d < k; ++d) {
          const auto r = hilbert_dim(g, d, k, h1);
          CHECK(r.h0 - r.h1 == k);
          CHECK(r.dim >= r.generic_dim);
          CHECK(r.dim >= 1);
          CHECK((r.dim == r.generic_dim) == (h1 == 0));
          CHECK(Integer(static_cast<long>(wedge_states(r.h0, d).size())) == r.dim);
        }
      }
    }
  }
}

TEST_CASE("property: dimension increases strictly with h1") {
  const long g = 9, k = 2;
  const long max_h1 = jump_stratum(g, k).max_h1;
  REQUIRE(max_h1 >= 2);
  Integer previous = 0;
  for (long h1 = 0; h1 <= max_h1; ++h1) {
    const auto r = hilbert_dim(g, 1, k, h1);
    CHECK(r.dim > previous);
    previous = r.dim;
  }
}

TEST_CASE("hilbert_dim: generic binomials") {
  for (long k = 2; k <= 12; ++k) {
    for (long d = 1; d < k; ++d) {
      Integer expected = 1;
      for (long i = 0; i < d; ++i) expected = expected * (k - i) / (i + 1);
      CHECK(hilbert_dim(0, d, k).dim == expected);
    }
  }
  CHECK(hilbert_dim(0, 30, 60).dim == Integer("118264581564861424"));
}
