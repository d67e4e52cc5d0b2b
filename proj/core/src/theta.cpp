#include <algorithm>
#include <cmath>
#include <numbers>

#include "vortexq/error.hpp"
#include "vortexq/geometry.hpp"

namespace vortexq::geometry {

namespace {
constexpr double kPi = std::numbers::pi;
}

ThetaValue jacobi_theta1(Complex z, Complex modulus) {
  if (!(modulus.imag() > 0.0)) throw Error(ErrorKind::InvalidModulus, "theta needs Im(modulus) > 0");
  const Complex ipt = Complex(0.0, kPi) * modulus;
  const double abs_im_z = std::fabs(z.imag());
  Complex value = 0.0;
  Complex deriv = 0.0;
  double largest = 0.0;
  for (int n = 0; n < 200; ++n) {
    const double half = n + 0.5;
    // |q^{(n+1/2)^2}| e^{(2n+1)|Im z|} bounds the size of the n-th term
    const double log_bound = -kPi * modulus.imag() * half * half + (2 * n + 1) * abs_im_z;
    const double bound = std::exp(log_bound) * (2 * n + 1);
    largest = std::max(largest, bound);
    if (n > 0 && bound < 1e-18 * largest) break;
    const Complex qpow = std::exp(ipt * (half * half));
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double freq = 2.0 * n + 1.0;
    value += sign * qpow * std::sin(freq * z);
    deriv += sign * qpow * freq * std::cos(freq * z);
  }
  return {2.0 * value, 2.0 * deriv};
}

double log_abs_dedekind_eta(Complex modulus) {
  if (!(modulus.imag() > 0.0)) throw Error(ErrorKind::InvalidModulus, "eta needs Im(modulus) > 0");
  double acc = -kPi * modulus.imag() / 12.0;
  const Complex step = Complex(0.0, 2.0 * kPi) * modulus;
  for (int n = 1; n < 10000; ++n) {
    const Complex qn = std::exp(step * static_cast<double>(n));
    const double a = std::abs(qn);
    if (a < 1e-18) break;
    acc += std::log(std::abs(1.0 - qn));
  }
  return acc;
}

}  // namespace vortexq::geometry
