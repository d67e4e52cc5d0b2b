#pragma once

// Spectral zeta function of the scalar Laplacian -Delta on a flat torus of
// area V, and the Quillen factor exp(zeta'(0)).
//
// The positive spectrum is lambda = 4 pi^2 |n - m tau|^2 / (V Im tau) over
// (m, n) != 0, the dual lattice of L (Z + tau Z) scaled by (2 pi)^2.

#include <map>
#include <string>
#include <vector>

#include "vortexq/geometry.hpp"

namespace vortexq::zetadet {

using geometry::Complex;
using geometry::TorusSpec;

inline constexpr const char* kNormalization = "scalar Laplacian -Delta, eigenvalues 4 pi^2 |gamma*|^2";

struct Eigenvalue {
  double lambda = 0.0;
  int multiplicity = 0;
  /// A representative mode (m, n): e^{2 pi i (m s + n t)}.
  int m = 0;
  int n = 0;
};

struct EigenvalueList {
  std::vector<Eigenvalue> levels;  ///< sorted ascending, zero excluded
  /// Largest relative mismatch against the grid Laplacian over the checked
  /// modes (those strictly below the grid Nyquist bound).
  double grid_defect = 0.0;
  int checked_levels = 0;
};

/// Positive eigenvalues <= cutoff with multiplicities. The first
/// `verify_levels` levels whose mode fits the grid are checked against the
/// spectral grid Laplacian applied to cos(2 pi (m s + n t)).
EigenvalueList dual_lattice_eigenvalues(const TorusSpec& spec, double cutoff, int verify_levels = 8);

struct LatticeSum {
  double value = 0.0;
  /// Rigorous bound on the neglected part; value <= exact <= value + tail_bound.
  double tail_bound = 0.0;
  long terms = 0;
};

/// zeta(t) for t > 1 by the Mellin split at t0 = V/(4 pi) into two
/// exponentially convergent sums. Throws ConvergenceDomain for t <= 1.
double zeta_value(const TorusSpec& spec, double t);
/// Same with an explicit split point and the certified tail bound.
LatticeSum zeta_value_split(const TorusSpec& spec, double t, double split);

/// Direct partial sum of lambda^{-t} over |n - m tau| <= radius with the
/// covering-radius tail bound.
LatticeSum direct_partial_sum(const TorusSpec& spec, double t, double radius);

struct ZetaResult {
  Complex modulus;
  double area = 0.0;
  std::map<double, double> zeta_at;
  double zeta_zero = 0.0;
  double zeta_prime_zero = 0.0;
  double quillen_factor = 0.0;  ///< exp(zeta_prime_zero)
  double method_spread = 0.0;
  // per-route values
  double zeta_zero_mellin = 0.0;
  double zeta_zero_cutoff = 0.0;
  double zeta_prime_mellin = 0.0;
  double zeta_prime_cutoff = 0.0;
  std::string normalization = kNormalization;
};

/// Route A: Mellin transform of the heat trace split at t0 = V/(4 pi).
/// Route B: heat-cutoff sums minus the analytic Weyl term, Richardson
/// extrapolated in the cutoff. Throws MethodDisagreement if the routes differ
/// by more than `accept_tol` on zeta(0) or zeta'(0).
ZetaResult zeta_prime_zero(const TorusSpec& spec, const std::vector<double>& evaluation_points = {},
                           double accept_tol = 1e-8);

struct RouteValue {
  double zeta_zero = 0.0;
  double zeta_prime = 0.0;
};
RouteValue zeta_route_mellin(const TorusSpec& spec);
RouteValue zeta_route_cutoff(const TorusSpec& spec);

}  // namespace vortexq::zetadet
