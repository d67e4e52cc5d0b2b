#pragma once

// Abelian vortex equations on a flat torus, reduced to the scalar
// Kazdan-Warner equation for u = log(|phi|^2 / tau):
//
//   Delta u = tau (e^u - 1) + 4 pi sum n_i delta_{z_i}.
//
// The delta masses are carried analytically by u_s = 4 pi sum n_i G(., z_i),
// and the smooth remainder v = u - u_s solves
//
//   Delta v = tau (h e^v - 1) + 4 pi d / area,      h = e^{u_s} >= 0,
//
// by damped Newton with preconditioned conjugate-gradient Jacobian solves.

#include <optional>
#include <vector>

#include "vortexq/error.hpp"
#include "vortexq/exact.hpp"
#include "vortexq/geometry.hpp"

namespace vortexq::vortexpde {

using geometry::Complex;
using geometry::ScalarField;
using geometry::TorusSpec;

/// Physical and topological parameters. `level` is always the exact rational
/// tau * volume / (4 pi) as stored at construction.
struct QuantizationSpec {
  long genus = 1;
  long degree = 1;
  double tau = 0.0;
  double volume = 0.0;
  Rational level;

  /// Level recovered from floating tau by rationalization.
  static QuantizationSpec from_tau(long genus, long degree, double tau, double volume);
  /// Exact level; tau = 4 pi k / volume.
  static QuantizationSpec from_level(long genus, long degree, const Rational& level, double volume);

  /// Strict inequality tau V > 4 pi d.
  bool bradlow() const noexcept;
  /// Throws BradlowViolation.
  void require_bradlow() const;
  /// Recomputing the level from (tau, volume) reproduces `level`.
  bool level_consistent() const;
};

/// Effective divisor sum n_i [z_i]; points reduced to the fundamental domain,
/// coincident points merged.
struct DivisorSpec {
  std::vector<Complex> points;
  std::vector<int> multiplicities;

  int degree() const noexcept;
};

/// Reduces and merges; throws InvalidDivisor on empty input, size mismatch or
/// nonpositive multiplicity.
DivisorSpec make_divisor(const TorusSpec& spec, const std::vector<Complex>& points,
                         const std::vector<int>& multiplicities);
DivisorSpec make_divisor(const TorusSpec& spec, const std::vector<Complex>& points);

struct SolverOptions {
  double tol = 1e-10;
  int max_newton = 60;
  int max_cg = 400;
  /// Optional initial v (same torus); defaults to v = 0.
  const ScalarField* warm_start = nullptr;
};

struct Observables {
  ScalarField higgs_density;      ///< |phi|^2 = tau e^u
  ScalarField curvature_density;  ///< *F_A = -(|phi|^2 - tau) / 2
  double flux = 0.0;              ///< integral of *F_A
  double higgs_l2 = 0.0;          ///< integral of |phi|^2
};

struct VortexSolution {
  TorusSpec spec;
  QuantizationSpec q;
  DivisorSpec divisor;
  ScalarField u_s;  ///< singular part 4 pi sum n_i G(., z_i), clamped at grid poles
  ScalarField h;    ///< e^{u_s}, exact zeros at grid poles
  ScalarField v;    ///< smooth part
  double residual_norm = 0.0;
  std::vector<double> residual_history;
  int iterations = 0;
  bool converged = false;
  Observables observables;

  ScalarField u() const { return u_s + v; }
};

/// Raised with the last iterate when Newton stalls or diverges.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, VortexSolution last)
      : Error(ErrorKind::NewtonDivergence, what), last_(std::move(last)) {}
  const VortexSolution& last() const noexcept { return last_; }

 private:
  VortexSolution last_;
};

/// u_s = 4 pi sum n_i G(., z_i).
ScalarField singular_part(const TorusSpec& spec, const DivisorSpec& divisor);

/// h = e^{u_s} evaluated directly as a product of theta factors, so that it
/// vanishes exactly at grid points that coincide with a divisor point.
ScalarField singular_weight(const TorusSpec& spec, const DivisorSpec& divisor);

/// Throws BradlowViolation, InvalidTolerance, InvalidDivisor, DivergenceError.
VortexSolution solve_vortex(const TorusSpec& spec, const QuantizationSpec& q, const DivisorSpec& divisor,
                            const SolverOptions& options = {});

/// Rebuilds |phi|^2, *F_A, flux and the Higgs L2 norm from (h, v).
Observables reconstruct_observables(const TorusSpec& spec, double tau, const ScalarField& h,
                                    const ScalarField& v);

/// Max-norm residual of the regular equation.
double regular_residual(const TorusSpec& spec, double tau, int degree, const ScalarField& h,
                        const ScalarField& v);

struct ObservablesReport {
  double flux = 0.0;
  double higgs_l2 = 0.0;
  double higgs_min = 0.0;
  double higgs_max = 0.0;
  double residual_norm = 0.0;
};

ObservablesReport observables_report(const VortexSolution& sol);

/// Solve (shift_field - Delta) x = rhs by conjugate gradients preconditioned
/// with (mean(shift_field) - Delta)^{-1}. shift_field >= 0 with positive mean.
/// Returns the number of iterations used.
int solve_screened(geometry::Fourier& fourier, const ScalarField& shift_field, const ScalarField& rhs,
                   ScalarField& x, double rtol, int max_iter);

}  // namespace vortexq::vortexpde
