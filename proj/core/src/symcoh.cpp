#include "vortexq/symcoh.hpp"

#include <bit>
#include <sstream>

#include "vortexq/error.hpp"

namespace vortexq::symcoh {

namespace {

std::string format_term(const Rational& c, const std::string& name, bool first) {
  std::ostringstream os;
  Rational a = abs(c);
  if (!first) os << (sgn(c) < 0 ? " - " : " + ");
  else if (sgn(c) < 0) os << "-";
  if (a != 1) os << vortexq::to_string(a) << " ";
  os << name;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// H2Class

H2Class::H2Class(long genus, long degree_context) : genus_(genus), degree_(degree_context), eta_(0) {
  if (genus < 0) throw Error(ErrorKind::InvalidArgument, "genus must be nonnegative");
  if (degree_context < 1) throw Error(ErrorKind::InvalidArgument, "degree context must be positive");
  m_.assign(static_cast<std::size_t>(4 * genus * genus), Rational(0));
}

H2Class H2Class::eta(long genus, long degree_context) {
  H2Class c(genus, degree_context);
  c.eta_ = 1;
  return c;
}

H2Class H2Class::theta(long genus, long degree_context) {
  H2Class c(genus, degree_context);
  for (long i = 0; i < genus; ++i) c.set_lambda2(i, i + genus, 1);
  return c;
}

const Rational& H2Class::lambda2(long i, long j) const {
  if (i < 0 || j < 0 || i >= dim() || j >= dim()) throw Error(ErrorKind::InvalidArgument, "lambda2 index out of range");
  return m_[static_cast<std::size_t>(i * dim() + j)];
}

void H2Class::set_lambda2(long i, long j, const Rational& value) {
  if (i < 0 || j < 0 || i >= dim() || j >= dim()) throw Error(ErrorKind::InvalidArgument, "lambda2 index out of range");
  if (i == j) {
    if (value != 0) throw Error(ErrorKind::InvalidArgument, "diagonal of an antisymmetric matrix is zero");
    return;
  }
  m_[static_cast<std::size_t>(i * dim() + j)] = value;
  m_[static_cast<std::size_t>(j * dim() + i)] = -value;
}

bool H2Class::antisymmetric() const {
  for (long i = 0; i < dim(); ++i) {
    for (long j = 0; j < dim(); ++j) {
      if (lambda2(i, j) != -lambda2(j, i)) return false;
    }
  }
  return true;
}

std::optional<Rational> H2Class::theta_multiple() const {
  if (genus_ == 0) return Rational(0);
  const Rational c = lambda2(0, genus_);
  const H2Class t = theta(genus_, degree_);
  for (std::size_t k = 0; k < m_.size(); ++k) {
    if (m_[k] != c * t.m_[k]) return std::nullopt;
  }
  return c;
}

bool H2Class::integral() const {
  if (eta_.get_den() != 1) return false;
  for (const Rational& x : m_) {
    if (x.get_den() != 1) return false;
  }
  return true;
}

bool H2Class::even() const {
  if (!integral()) return false;
  auto is_even = [](const Rational& x) { return mpz_even_p(x.get_num_mpz_t()) != 0; };
  if (!is_even(eta_)) return false;
  for (const Rational& x : m_) {
    if (!is_even(x)) return false;
  }
  return true;
}

void H2Class::require_compatible(const H2Class& o) const {
  if (genus_ != o.genus_ || degree_ != o.degree_) {
    throw Error(ErrorKind::InvalidArgument, "classes on different symmetric products");
  }
}

H2Class& H2Class::operator+=(const H2Class& o) {
  require_compatible(o);
  eta_ += o.eta_;
  for (std::size_t k = 0; k < m_.size(); ++k) m_[k] += o.m_[k];
  return *this;
}

H2Class& H2Class::operator-=(const H2Class& o) {
  require_compatible(o);
  eta_ -= o.eta_;
  for (std::size_t k = 0; k < m_.size(); ++k) m_[k] -= o.m_[k];
  return *this;
}

H2Class& H2Class::operator*=(const Rational& s) {
  eta_ *= s;
  for (Rational& x : m_) x *= s;
  return *this;
}

bool operator==(const H2Class& a, const H2Class& b) {
  return a.genus_ == b.genus_ && a.degree_ == b.degree_ && a.eta_ == b.eta_ && a.m_ == b.m_;
}

std::string H2Class::to_string() const {
  std::string out;
  const auto tm = theta_multiple();
  if (!tm) {
    out = "[lambda2 not a theta multiple]";
  } else if (*tm != 0) {
    out = format_term(*tm, "theta", true);
  }
  if (eta_ != 0) out += format_term(eta_, "eta", out.empty());
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Operations

namespace {

// The class formula extends continuously to the dissolved point k = d.
void require_closed_bradlow(const QuantizationSpec& q) {
  if (q.level < Rational(q.degree)) {
    throw Error(ErrorKind::BradlowViolation,
                "k = " + vortexq::to_string(q.level) + " below d = " + std::to_string(q.degree));
  }
}

}  // namespace

H2Class kahler_class(const QuantizationSpec& q) {
  require_closed_bradlow(q);
  H2Class c = H2Class::theta(q.genus, q.degree);
  c.set_eta_coeff(q.level - Rational(q.degree));
  return c;
}

H2Class c1_tangent(long g, long d) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "degree must be positive");
  H2Class c = Rational(-1) * H2Class::theta(g, d);
  c.set_eta_coeff(Rational(d + 1 - g));
  return c;
}

WeilResult weil_check(const Rational& level, long genus) {
  if (level <= 0) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  if (level.get_den() != 1) {
    Integer floor_part;
    mpz_fdiv_q(floor_part.get_mpz_t(), level.get_num_mpz_t(), level.get_den_mpz_t());
    const Rational frac = level - Rational(floor_part);
    throw Error(ErrorKind::NotPrequantizable,
                "k = " + vortexq::to_string(level) + " has fractional part " + vortexq::to_string(frac));
  }
  return WeilResult{level.get_num(), 2 * genus};
}

WeilResult weil_check(double tau, double volume, long genus) {
  if (!(tau > 0.0) || !(volume > 0.0)) throw Error(ErrorKind::InvalidArgument, "tau and volume must be positive");
  return weil_check(vortexpde::QuantizationSpec::from_tau(genus, 1, tau, volume).level, genus);
}

MetaplecticVerdict metaplectic_check(long g, long d) {
  if (g < 0 || d < 1) throw Error(ErrorKind::InvalidArgument, "need g >= 0 and d >= 1");
  MetaplecticVerdict v;
  v.genus = g;
  v.degree = d;
  v.closed_form = (d == 1) || (g == 0 && d % 2 == 1);

  const H2Class c1 = c1_tangent(g, d);
  v.c1_eta = c1.eta_coeff();
  v.eta_part_even = mpz_even_p(c1.eta_coeff().get_num_mpz_t()) != 0;
  H2Class lambda_part = c1;
  lambda_part.set_eta_coeff(0);
  v.theta_part_even = lambda_part.even();
  v.two_adic_factorial = legendre_two_adic_factorial(g);
  v.two_pow_g_divides_factorial = v.two_adic_factorial >= g;

  if (d == 1) {
    // H^2(Sigma) = Z: eta and theta are not independent, evaluate on [Sigma]
    v.d1_pairing = pair_d1(c1);
    v.certificate = mpz_even_p(v.d1_pairing->get_num_mpz_t()) != 0;
  } else {
    // theta = 2 alpha would force 2^g | g! through theta^g = g! [pt]; the
    // matrix check sees the same thing directly.
    v.certificate = v.eta_part_even && v.theta_part_even;
  }
  return v;
}

PrequantumReport prequantum_class_check(const QuantizationSpec& q) {
  const WeilResult w = weil_check(q.level, q.genus);
  require_closed_bradlow(q);
  const Integer k = w.level;
  PrequantumReport r{Rational(-1) * c1_tangent(q.genus, q.degree), k - q.genus + 1, H2Class(q.genus, q.degree),
                     kahler_class(q), false};
  r.lhs = r.canonical + Rational(r.deg_m) * H2Class::eta(q.genus, q.degree);
  r.holds = (r.lhs == r.rhs);
  if (!r.holds) {
    throw Error(ErrorKind::IdentityFailure, "c1(K) + deg(M) eta = " + r.lhs.to_string() + " but theta + (k-d) eta = " +
                                                r.rhs.to_string());
  }
  return r;
}

KeVerdict ke_check(const QuantizationSpec& q) {
  KeVerdict v;
  v.level_matches = (q.level == Rational(q.genus - 1)) && q.genus >= 2;
  v.genus_condition = q.genus - 1 > q.degree;
  return v;
}

Rational pair_d1(const H2Class& c) {
  if (c.degree_context() != 1) {
    throw Error(ErrorKind::WrongDegreeContext, "pairing with [Sigma] needs degree context 1, got " +
                                                   std::to_string(c.degree_context()));
  }
  Rational s = c.eta_coeff();
  for (long i = 0; i < c.genus(); ++i) s += c.lambda2(i, i + c.genus());
  return s;
}

// ---------------------------------------------------------------------------
// Exterior algebra

ExteriorClass ExteriorClass::one(long genus) {
  ExteriorClass e(genus);
  e.terms_[0] = 1;
  return e;
}

ExteriorClass ExteriorClass::from_h2(const H2Class& c) {
  if (c.genus() > 31) throw Error(ErrorKind::InvalidArgument, "genus too large for the exterior algebra");
  ExteriorClass e(c.genus());
  for (long i = 0; i < c.dim(); ++i) {
    for (long j = i + 1; j < c.dim(); ++j) {
      const Rational& x = c.lambda2(i, j);
      if (x != 0) e.terms_[(std::uint64_t{1} << i) | (std::uint64_t{1} << j)] = x;
    }
  }
  return e;
}

ExteriorClass ExteriorClass::wedge(const ExteriorClass& o) const {
  if (genus_ != o.genus_) throw Error(ErrorKind::InvalidArgument, "exterior classes of different genus");
  ExteriorClass out(genus_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      if ((a & b) != 0) continue;
      // sign of merging the sorted factors of a and b: one transposition for
      // every pair (i in a, j in b) with i > j
      int swaps = 0;
      for (std::uint64_t rest = b; rest != 0; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        swaps += std::popcount(a >> (j + 1));
      }
      Rational term = ca * cb;
      if (swaps % 2 == 1) term = -term;
      Rational& slot = out.terms_[a | b];
      slot += term;
      if (slot == 0) out.terms_.erase(a | b);
    }
  }
  return out;
}

Rational ExteriorClass::top_coefficient() const {
  // a_0 ^ a_g ^ a_1 ^ a_{g+1} ^ ... reordered to a_0 ^ ... ^ a_{2g-1}
  const std::uint64_t top = genus_ == 0 ? 0 : ((std::uint64_t{1} << (2 * genus_)) - 1);
  const auto it = terms_.find(top);
  if (it == terms_.end()) return 0;
  // sorting (0, g, 1, g+1, ..., g-1, 2g-1) takes g(g-1)/2 transpositions
  const long swaps = genus_ * (genus_ - 1) / 2;
  return swaps % 2 == 0 ? it->second : Rational(-it->second);
}

ExteriorClass theta_power(long g, long n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
  const ExteriorClass theta = ExteriorClass::from_h2(H2Class::theta(g, 1));
  ExteriorClass acc = ExteriorClass::one(g);
  for (long i = 0; i < n; ++i) acc = acc.wedge(theta);
  return acc;
}

}  // namespace vortexq::symcoh
