#include "vortexq/exact.hpp"

#include <cmath>
#include <numeric>

#include "vortexq/error.hpp"

namespace vortexq {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::InvalidResolution: return "InvalidResolution";
    case ErrorKind::InvalidArea: return "InvalidArea";
    case ErrorKind::NonZeroMean: return "NonZeroMean";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InvalidDivisor: return "InvalidDivisor";
    case ErrorKind::BradlowViolation: return "BradlowViolation";
    case ErrorKind::NewtonDivergence: return "NewtonDivergence";
    case ErrorKind::InvalidTolerance: return "InvalidTolerance";
    case ErrorKind::StencilInconsistent: return "StencilInconsistent";
    case ErrorKind::BackgroundMismatch: return "BackgroundMismatch";
    case ErrorKind::InvalidModuliGrid: return "InvalidModuliGrid";
    case ErrorKind::NotPrequantizable: return "NotPrequantizable";
    case ErrorKind::IdentityFailure: return "IdentityFailure";
    case ErrorKind::WrongDegreeContext: return "WrongDegreeContext";
    case ErrorKind::InvalidJump: return "InvalidJump";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConvergenceDomain: return "ConvergenceDomain";
    case ErrorKind::MethodDisagreement: return "MethodDisagreement";
  }
  return "Unknown";
}

bool is_domain_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BradlowViolation:
    case ErrorKind::NotPrequantizable:
    case ErrorKind::HypothesisViolation:
    case ErrorKind::InvalidJump:
    case ErrorKind::NonZeroMean:
    case ErrorKind::InvalidModulus:
    case ErrorKind::InvalidResolution:
    case ErrorKind::InvalidArea:
    case ErrorKind::InvalidDivisor:
    case ErrorKind::InvalidTolerance:
    case ErrorKind::InvalidModuliGrid:
    case ErrorKind::WrongDegreeContext:
    case ErrorKind::DegreeOutOfRange:
    case ErrorKind::ConvergenceDomain:
    case ErrorKind::InvalidArgument:
      return true;
    default:
      return false;
  }
}

Integer binomial(long n, long k) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "binomial with negative n");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Integer num = 1;
  Integer den = 1;
  for (long i = 1; i <= k; ++i) {
    num *= n - k + i;
    den *= i;
    Integer g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) {
      num /= g;
      den /= g;
    }
  }
  return num / den;
}

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

long legendre_two_adic_factorial(long n) {
  long v = 0;
  for (long p = 2; p <= n; p *= 2) v += n / p;
  return v;
}

Rational rationalize(double x, long max_denominator, double rel_tol) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "cannot rationalize a non-finite value");
  // continued fraction convergents
  long double r = x;
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 64; ++it) {
    long double a = std::floor(r);
    if (std::fabs(a) > 1e12L) break;
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0;
    const long k2 = ai * k1 + k0;
    if (k2 > max_denominator || k2 <= 0) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    const double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::fabs(approx - x) <= rel_tol * std::max(1.0, std::fabs(x))) {
      Rational q(h1, k1);
      q.canonicalize();
      return q;
    }
    const long double frac = r - a;
    if (frac == 0) break;
    r = 1.0L / frac;
  }
  Rational exact(x);
  exact.canonicalize();
  return exact;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace vortexq
