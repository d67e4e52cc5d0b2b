#pragma once

// Chern-class calculus in Q[Theta] / (Theta^3) for exterior powers of the
// push-forward E of the Poincare bundle, and the projective-flatness test
// on Lambda^d E.

#include <vector>

#include "vortexq/exact.hpp"

namespace vortexq::obstruct {

/// c(F) = 1 + c1_theta Theta + c2_theta2 Theta^2 (mod Theta^3).
struct ChernPair {
  Rational c1_theta;
  Rational c2_theta2;
  Integer rank;

  friend bool operator==(const ChernPair&, const ChernPair&) = default;
};

/// Mattuck: rank k, c1 = -Theta, c2 = Theta^2 / 2.
ChernPair mattuck_pushforward(long k);

/// c1(Lambda^d) = C(r-1, d-1) c1 and
/// c2(Lambda^d) = C(r-2, d-1) c2 + (C(r-1, d-1)^2 - C(r-1, d-1)) c1^2 / 2.
/// Throws DegreeOutOfRange unless 1 <= d <= rank.
ChernPair chern_exterior_power(const ChernPair& e, long d);

/// Brute-force expansion of the elementary symmetric polynomials of the
/// C(r, d) root sums x_S = sum_{i in S} x_i, written as
///   e1(x_S) = c1_coeff e1(x),   e2(x_S) = alpha e1(x)^2 + beta e2(x).
struct RootOracleRecord {
  long r = 0;
  long d = 0;
  Integer rank;
  Rational c1_coeff;
  Rational alpha;
  Rational beta;
  bool symmetric = false;  ///< the expansion really was a symmetric quadratic
  bool equal = false;      ///< matches chern_exterior_power's coefficients
};

/// Throws InvalidArgument for r > 8 or d outside [1, r].
RootOracleRecord chern_root_oracle(long r, long d);

struct ObstructionReport {
  long g = 0;
  long k = 0;
  long d = 0;
  ChernPair exterior;  ///< Chern data of Lambda^d E
  Rational lhs;        ///< (R - 1) c1^2, Theta^2 coefficient
  Rational rhs;        ///< 2 R c2
  /// R (C1^2 - (d - 1)/(k - 1) C1), the same right-hand side in closed form.
  Rational rhs_closed;
  Rational obstruction;  ///< lhs - rhs
  bool flat_possible = false;
  bool closed_form_verdict = false;  ///< k == d
};

/// Necessary condition for a projectively flat connection on Lambda^d E over
/// the Jacobian. Throws HypothesisViolation naming the first failed
/// hypothesis among g > 1, k > g - 1, k >= d > 0.
ObstructionReport proj_flat_test(long g, long k, long d);

}  // namespace vortexq::obstruct
