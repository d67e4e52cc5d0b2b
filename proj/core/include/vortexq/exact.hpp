#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace vortexq {

using Integer = mpz_class;
using Rational = mpq_class;

/// Binomial coefficient C(n, k) for n >= 0; zero when k < 0 or k > n.
/// Multiplicative formula with a gcd reduction at every step.
Integer binomial(long n, long k);

/// 2-adic valuation of n! (Legendre's formula).
long legendre_two_adic_factorial(long n);

/// Rational nearest to `x` with denominator at most `max_denominator`, if it
/// reproduces `x` to relative precision `rel_tol`; otherwise the exact dyadic
/// value of the double.
Rational rationalize(double x, long max_denominator = 1000000, double rel_tol = 1e-12);

/// num / den in lowest terms. Throws InvalidArgument for den == 0.
Rational make_rational(long num, long den);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

}  // namespace vortexq
