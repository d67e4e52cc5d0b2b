#include "vortexq/obstruct.hpp"

#include <string>

#include "vortexq/error.hpp"

namespace vortexq::obstruct {

namespace {

// C(n, k) with C(n, k) = 0 for n < 0; only reached with a vanishing c2 factor.
Integer binom0(long n, long k) { return n < 0 ? Integer(0) : binomial(n, k); }

Rational q(const Integer& z) { return Rational(z); }

}  // namespace

ChernPair mattuck_pushforward(long k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "rank must be positive");
  return ChernPair{Rational(-1), Rational(1, 2), Integer(k)};
}

ChernPair chern_exterior_power(const ChernPair& e, long d) {
  if (!e.rank.fits_slong_p()) throw Error(ErrorKind::InvalidArgument, "rank too large");
  const long r = e.rank.get_si();
  if (d < 1 || d > r) {
    throw Error(ErrorKind::DegreeOutOfRange, "d = " + std::to_string(d) + " outside [1, " + std::to_string(r) + "]");
  }
  const Rational c1f = q(binomial(r - 1, d - 1));
  ChernPair out;
  out.rank = binomial(r, d);
  out.c1_theta = c1f * e.c1_theta;
  out.c2_theta2 = q(binom0(r - 2, d - 1)) * e.c2_theta2 + (c1f * c1f - c1f) / 2 * e.c1_theta * e.c1_theta;
  out.c1_theta.canonicalize();
  out.c2_theta2.canonicalize();
  return out;
}

RootOracleRecord chern_root_oracle(long r, long d) {
  if (r < 1 || r > 8) throw Error(ErrorKind::InvalidArgument, "root oracle needs 1 <= r <= 8");
  if (d < 1 || d > r) throw Error(ErrorKind::InvalidArgument, "root oracle needs 1 <= d <= r");
  const std::size_t n = static_cast<std::size_t>(r);

  // linear forms x_S as 0/1 coefficient vectors
  std::vector<std::vector<long>> forms;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    if (__builtin_popcount(mask) != d) continue;
    std::vector<long> f(n, 0);
    for (std::size_t i = 0; i < n; ++i) f[i] = (mask >> i) & 1u;
    forms.push_back(std::move(f));
  }

  // e1 of the root sums: coefficient vector
  std::vector<Integer> e1(n, 0);
  for (const auto& f : forms) {
    for (std::size_t i = 0; i < n; ++i) e1[i] += f[i];
  }
  // e2 of the root sums: quad[i][j], i <= j, coefficient of x_i x_j
  std::vector<std::vector<Integer>> quad(n, std::vector<Integer>(n, 0));
  for (std::size_t s = 0; s < forms.size(); ++s) {
    for (std::size_t t = s + 1; t < forms.size(); ++t) {
      for (std::size_t i = 0; i < n; ++i) {
        if (forms[s][i] == 0 && forms[t][i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const long c = forms[s][i] * forms[t][j];
          if (c == 0) continue;
          if (i <= j) quad[i][j] += c;
          else quad[j][i] += c;
        }
      }
    }
  }

  RootOracleRecord rec;
  rec.r = r;
  rec.d = d;
  rec.rank = Integer(forms.size());
  rec.c1_coeff = q(e1[0]);
  rec.alpha = q(quad[0][0]);
  bool sym = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (e1[i] != e1[0] || quad[i][i] != quad[0][0]) sym = false;
  }
  const Integer off = r >= 2 ? quad[0][1] : Integer(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (quad[i][j] != off) sym = false;
    }
  }
  rec.symmetric = sym;
  // e1^2 contributes 2 to each x_i x_j, e2 contributes 1
  rec.beta = r >= 2 ? q(off) - 2 * rec.alpha : Rational(0);

  // compare with the closed formula applied to generic (c1, c2) = (1, 0) and (0, 1)
  const ChernPair unit_c1 = chern_exterior_power(ChernPair{Rational(1), Rational(0), Integer(r)}, d);
  const ChernPair unit_c2 = chern_exterior_power(ChernPair{Rational(0), Rational(1), Integer(r)}, d);
  const bool beta_ok = r >= 2 ? (rec.beta == unit_c2.c2_theta2) : true;
  rec.equal = sym && rec.rank == unit_c1.rank && rec.c1_coeff == unit_c1.c1_theta &&
              rec.alpha == unit_c1.c2_theta2 && beta_ok;
  return rec;
}

ObstructionReport proj_flat_test(long g, long k, long d) {
  if (g <= 1) throw Error(ErrorKind::HypothesisViolation, "g > 1 required, got g = " + std::to_string(g));
  if (k <= g - 1) {
    throw Error(ErrorKind::HypothesisViolation,
                "k > g - 1 required, got k = " + std::to_string(k) + ", g = " + std::to_string(g));
  }
  if (d <= 0) throw Error(ErrorKind::HypothesisViolation, "d > 0 required, got d = " + std::to_string(d));
  if (k < d) {
    throw Error(ErrorKind::HypothesisViolation,
                "k >= d required, got k = " + std::to_string(k) + ", d = " + std::to_string(d));
  }
  ObstructionReport rep;
  rep.g = g;
  rep.k = k;
  rep.d = d;
  rep.exterior = chern_exterior_power(mattuck_pushforward(k), d);
  const Rational R = q(rep.exterior.rank);
  const Rational c1 = rep.exterior.c1_theta;
  rep.lhs = (R - 1) * c1 * c1;
  rep.rhs = 2 * R * rep.exterior.c2_theta2;
  const Rational C1 = q(binomial(k - 1, d - 1));
  rep.rhs_closed = R * (C1 * C1 - make_rational(d - 1, k - 1) * C1);
  rep.lhs.canonicalize();
  rep.rhs.canonicalize();
  rep.rhs_closed.canonicalize();
  rep.obstruction = rep.lhs - rep.rhs;
  rep.flat_possible = rep.obstruction == 0;
  rep.closed_form_verdict = k == d;
  return rep;
}

}  // namespace vortexq::obstruct
