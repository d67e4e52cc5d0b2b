#pragma once

// L2 Kaehler form on the vortex moduli space of a flat torus, by two routes:
//
//   deformation: tangent vectors (A_dot, phi_dot) in Coulomb gauge, paired
//     with  g(t, t') = c * integral( A_dot . A_dot' + Re(psi conj(psi')) ),
//     psi = |phi| * phi_dot / phi, and omega(t, t') = g(J t, t') with
//     J (A_dot, psi) = (*A_dot, i psi);
//
//   fiber integration: omega = -(1/4pi) integral over the surface of
//     (tau vol_surface ^ F + F ^ F) for the curvature F of the universal
//     connection, assembled from second derivatives of u on moduli x surface.
//
// Moduli coordinates are the physical vortex positions. The chart direction
// 2j is Re p_j, 2j + 1 is Im p_j. Only divisors with distinct points are
// charted this way.

#include <array>
#include <string>
#include <vector>

#include "vortexq/geometry.hpp"
#include "vortexq/vortexpde.hpp"

namespace vortexq::modulimetric {

using geometry::Complex;
using geometry::ScalarField;
using geometry::TorusSpec;
using vortexpde::DivisorSpec;
using vortexpde::QuantizationSpec;
using vortexpde::VortexSolution;

/// Prefactor c of the pairing. With c = 1/(2 pi) the d = 1 torus volume is
/// tau V / 2, the value fixed by the Kaehler class.
inline constexpr double kPairingNormalization = 0.15915494309189533577;  // 1 / (2 pi)

struct ModuliTangent {
  TorusSpec spec;
  /// Fingerprint of the background: divisor points, multiplicities and tau.
  std::vector<Complex> background_points;
  std::vector<int> background_multiplicities;
  double background_tau = 0.0;

  ScalarField a_dot_x;  ///< Coulomb-gauge A_dot, dx component
  ScalarField a_dot_y;  ///< Coulomb-gauge A_dot, dy component
  ScalarField psi_re;   ///< Re(|phi| phi_dot / phi)
  ScalarField psi_im;   ///< Im(|phi| phi_dot / phi)
  /// Max-norm residual of Delta chi - |phi|^2 Im(phi_dot/phi), relative to the
  /// size of the forcing.
  double coulomb_residual = 0.0;
};

enum class Route { Deformation, FiberIntegration };
std::string to_string(Route route);

struct MetricSample {
  DivisorSpec moduli_point;
  Route route = Route::Deformation;
  /// omega(d_a, d_b); antisymmetric by construction.
  std::vector<std::vector<double>> omega;
  /// Largest Coulomb residual among the tangents (deformation route only).
  double coulomb_residual = 0.0;
  int solves = 0;
};

struct MetricOptions {
  /// Moduli step as a fraction of the fundamental-domain diameter.
  double step_fraction = 1e-3;
  /// Newton tolerance for every stencil solve.
  double tol = 1e-10;
  /// Combine steps h and 2h to cancel the O(h^2) term of central differences.
  bool richardson = false;
};

/// Fundamental-domain diameter times step_fraction.
double moduli_step(const TorusSpec& spec, const MetricOptions& options);

/// Tangent to the family at `center` in the direction p_j -> p_j + eps *
/// direction, from solutions at p_j +- step * direction. A zero direction
/// gives the zero tangent. Throws StencilInconsistent when the stencil
/// solutions do not belong to one family or their residuals differ by more
/// than a factor 10 above the 1e-10 floor.
ModuliTangent tangent_by_fd(const VortexSolution& center, const VortexSolution& plus, const VortexSolution& minus,
                            int point_index, Complex direction, double step);

/// Metric pairing g(t1, t2). Throws BackgroundMismatch.
double l2_pairing(const ModuliTangent& t1, const ModuliTangent& t2);
/// omega(t1, t2) = g(J t1, t2).
double omega_pairing(const ModuliTangent& t1, const ModuliTangent& t2);
/// J (A_dot, psi) = (*A_dot, i psi).
ModuliTangent apply_j(const ModuliTangent& t);

/// Tangents along every chart direction at a moduli point, with the background.
struct TangentFrame {
  VortexSolution background;
  std::vector<ModuliTangent> tangents;
  int solves = 0;
};
TangentFrame tangent_frame(const TorusSpec& spec, const QuantizationSpec& q, const DivisorSpec& point,
                           const MetricOptions& options = {});

MetricSample omega_deformation(const TorusSpec& spec, const QuantizationSpec& q, const DivisorSpec& point,
                               const MetricOptions& options = {});
MetricSample omega_fiberint(const TorusSpec& spec, const QuantizationSpec& q, const DivisorSpec& point,
                            const MetricOptions& options = {});

struct VolumeReport {
  double volume = 0.0;
  double density_min = 0.0;
  double density_max = 0.0;
  /// omega(d_x, d_y) at each moduli grid point, row-major in (a, b).
  std::vector<double> density;
  int moduli_grid = 0;
};

/// Symplectic volume of the d = 1 moduli space (a copy of the torus) by the
/// midpoint rule on an M x M grid of vortex positions. Throws
/// InvalidModuliGrid (M < 4) and WrongDegreeContext (d != 1 or g != 1).
VolumeReport volume_d1(const TorusSpec& spec, const QuantizationSpec& q, int moduli_grid,
                       const MetricOptions& options = {}, Route route = Route::Deformation);

}  // namespace vortexq::modulimetric
