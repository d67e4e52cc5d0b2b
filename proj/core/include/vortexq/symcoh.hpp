#pragma once

// Degree-two integral cohomology of the symmetric product Sym^d(Sigma_g) in
// the presentation H^2 = Z eta (+) Lambda^2 H^1(Sigma), with exact rational
// arithmetic throughout.
//
// eta is the class of Sym^{d-1} + pt; theta = sum_i a_i ^ a_{i+g} is the
// pull-back of the theta class under Abel-Jacobi.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vortexq/exact.hpp"
#include "vortexq/vortexpde.hpp"

namespace vortexq::symcoh {

using vortexpde::QuantizationSpec;

class H2Class {
 public:
  H2Class(long genus, long degree_context);

  static H2Class eta(long genus, long degree_context);
  static H2Class theta(long genus, long degree_context);

  long genus() const noexcept { return genus_; }
  long degree_context() const noexcept { return degree_; }
  long dim() const noexcept { return 2 * genus_; }

  const Rational& eta_coeff() const noexcept { return eta_; }
  void set_eta_coeff(const Rational& c) { eta_ = c; }
  /// Entry (i, j) of the antisymmetric matrix; 0-based indices < 2g.
  const Rational& lambda2(long i, long j) const;
  /// Sets (i, j) and (j, i) = -value. Diagonal entries must stay zero.
  void set_lambda2(long i, long j, const Rational& value);

  bool antisymmetric() const;
  /// c with lambda2 = c * theta, if there is one (always for g = 0).
  std::optional<Rational> theta_multiple() const;
  /// Every coefficient is an integer.
  bool integral() const;
  /// Every coefficient is an even integer.
  bool even() const;

  H2Class& operator+=(const H2Class& o);
  H2Class& operator-=(const H2Class& o);
  H2Class& operator*=(const Rational& s);
  friend H2Class operator+(H2Class a, const H2Class& b) { return a += b; }
  friend H2Class operator-(H2Class a, const H2Class& b) { return a -= b; }
  friend H2Class operator*(const Rational& s, H2Class a) { return a *= s; }
  friend bool operator==(const H2Class& a, const H2Class& b);

  /// "theta + 2 eta" style rendering when lambda2 is a theta multiple.
  std::string to_string() const;

 private:
  void require_compatible(const H2Class& o) const;

  long genus_;
  long degree_;
  Rational eta_;
  std::vector<Rational> m_;  // 2g x 2g, row-major
};

/// [omega_L2] / (2 pi) = theta + (k - d) eta. Defined for k >= d (k = d is the
/// dissolved limit, where it is theta); throws BradlowViolation for k < d.
H2Class kahler_class(const QuantizationSpec& q);

/// c_1(T Sym^d) = (d + 1 - g) eta - theta.
H2Class c1_tangent(long g, long d);

struct WeilResult {
  Integer level;
  long flat_torus_dim = 0;  ///< 2g real dimensions of flat unitary line bundles
};

/// k = tau V / (4 pi) must be an integer. Throws NotPrequantizable with the
/// fractional part in the message.
WeilResult weil_check(double tau, double volume, long genus = 1);
WeilResult weil_check(const Rational& level, long genus = 1);

struct MetaplecticVerdict {
  long genus = 0;
  long degree = 0;
  bool closed_form = false;  ///< d == 1, or g == 0 and d odd
  bool certificate = false;  ///< c_1 divisible by 2 in H^2(Sym^d; Z)
  Rational c1_eta;           ///< d + 1 - g
  bool eta_part_even = false;
  bool theta_part_even = false;
  /// d == 1: <c_1, [Sigma]> = 2 - 2g decides on its own.
  std::optional<Rational> d1_pairing;
  /// Legendre step: nu_2(g!) and whether 2^g divides g!.
  long two_adic_factorial = 0;
  bool two_pow_g_divides_factorial = false;
  bool agree() const noexcept { return closed_form == certificate; }
};

MetaplecticVerdict metaplectic_check(long g, long d);

struct PrequantumReport {
  H2Class canonical;  ///< c_1(K) = -c_1(T)
  Integer deg_m;      ///< k - g + 1
  H2Class lhs;        ///< c_1(K) + deg(M) eta
  H2Class rhs;        ///< theta + (k - d) eta
  bool holds = false;
};

/// Throws NotPrequantizable, BradlowViolation (k < d), and IdentityFailure if the
/// two sides differ.
PrequantumReport prequantum_class_check(const QuantizationSpec& q);

struct KeVerdict {
  bool level_matches = false;  ///< tau V = 2 pi (2g - 2), i.e. k = g - 1
  bool genus_condition = false;  ///< g - 1 > d
  bool compatible() const noexcept { return level_matches && genus_condition; }
};

KeVerdict ke_check(const QuantizationSpec& q);

/// <c, [Sigma]> for d = 1: eta pairs to 1 and a_i ^ a_{i+g} to 1, so theta
/// pairs to g. Throws WrongDegreeContext.
Rational pair_d1(const H2Class& c);

/// Element of the exterior algebra Lambda^* H^1(Sigma_g), stored as a map
/// from basis monomials (bit masks over a_0 .. a_{2g-1}) to coefficients.
class ExteriorClass {
 public:
  explicit ExteriorClass(long genus) : genus_(genus) {}
  static ExteriorClass one(long genus);
  static ExteriorClass from_h2(const H2Class& c);

  ExteriorClass wedge(const ExteriorClass& o) const;
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<std::uint64_t, Rational>& terms() const noexcept { return terms_; }
  /// Coefficient of the top monomial a_0 ^ a_g ^ a_1 ^ a_{g+1} ^ ... .
  Rational top_coefficient() const;

 private:
  long genus_;
  std::map<std::uint64_t, Rational> terms_;
};

/// theta^n in the exterior algebra; zero for n > g.
ExteriorClass theta_power(long g, long n);

}  // namespace vortexq::symcoh
