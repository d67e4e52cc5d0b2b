#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>

#include "vortexq/cli/run.hpp"
#include "vortexq/error.hpp"
#include "vortexq/hilbert.hpp"
#include "vortexq/modulimetric.hpp"
#include "vortexq/obstruct.hpp"
#include "vortexq/symcoh.hpp"
#include "vortexq/version.hpp"
#include "vortexq/vortexpde.hpp"
#include "vortexq/zetadet.hpp"

namespace vortexq::cli {

namespace {

constexpr double kPi = std::numbers::pi;
using geometry::Complex;

std::string num(double x) { return format_double(x); }
std::string num(long x) { return std::to_string(x); }
std::string yes(bool b) { return b ? "true" : "false"; }

// A handler resolves every parameter first (ConfigError surfaces before any
// work) and returns the deferred computation.
struct Output {
  Json result = Json::object();
  Table table;
};
using Job = std::function<Output()>;
using Handler = std::function<Job(Params&)>;

// --- shared parameter groups ------------------------------------------------

constexpr long kMaxGenus = 64;
constexpr long kMaxDegree = 64;
constexpr long kMaxLevel = 100000;

Complex modulus_param(Params& p) {
  const auto xs = p.reals("modulus", {0.0, 1.0}, -1e6, 1e6);
  if (xs.size() != 2) p.fail("modulus", "expected re,im");
  if (!(xs[1] > 0.0)) p.fail("modulus", "imaginary part must be positive");
  if (!(xs[1] <= 1e3)) p.fail("modulus", "imaginary part above 1000");
  return {xs[0], xs[1]};
}

int resolution_param(Params& p, long fallback) {
  const long n = p.integer("resolution", fallback, 32, 2048);
  if ((n & (n - 1)) != 0) p.fail("resolution", std::to_string(n) + " is not a power of two");
  return static_cast<int>(n);
}

/// tau directly, or tau = 4 pi k / V from an integer level.
vortexpde::QuantizationSpec coupling_params(Params& p, long genus, long degree) {
  const double volume = p.real("volume", 1.0, 0.0, 1e8, true);
  if (p.has("tau") && p.has("k")) p.fail("k", "give either tau or k, not both");
  if (p.has("k")) {
    const long k = p.integer("k", std::nullopt, 1, kMaxLevel);
    return vortexpde::QuantizationSpec::from_level(genus, degree, Rational(k), volume);
  }
  const double tau = p.real("tau", std::nullopt, 0.0, 1e8, true);
  return vortexpde::QuantizationSpec::from_tau(genus, degree, tau, volume);
}

/// Divisor points in lattice coordinates; default spreads d points on the diagonal.
std::pair<std::vector<std::pair<double, double>>, std::vector<int>> divisor_params(Params& p, long d) {
  std::vector<std::pair<double, double>> pts;
  if (p.has("points")) {
    pts = p.pairs("points", -1e3, 1e3);
  } else {
    Json arr = Json::array();
    for (long j = 0; j < d; ++j) {
      const double s = static_cast<double>(j) / static_cast<double>(d);
      pts.emplace_back(s, s);
      arr.push(Json::from({s, s}));
    }
    p.note("points", std::move(arr));
  }
  std::vector<long> fallback(pts.size(), 1);
  const auto mult = p.integers("multiplicities", fallback, 1, kMaxDegree);
  if (mult.size() != pts.size()) p.fail("multiplicities", "one multiplicity per point required");
  long total = 0;
  for (long m : mult) total += m;
  if (total != d) p.fail(p.has("multiplicities") ? "multiplicities" : "points", "degrees sum to " +
                                                                                  std::to_string(total) + ", d = " +
                                                                                  std::to_string(d));
  return {pts, std::vector<int>(mult.begin(), mult.end())};
}

vortexpde::DivisorSpec build_divisor(const geometry::TorusSpec& spec,
                                     const std::vector<std::pair<double, double>>& pts, const std::vector<int>& mult) {
  std::vector<Complex> zs;
  for (auto [s, t] : pts) zs.push_back(spec.from_lattice(s, t));
  return vortexpde::make_divisor(spec, zs, mult);
}

Json level_json(const vortexpde::QuantizationSpec& q) {
  Json j = Json::object();
  j.set("tau", q.tau);
  j.set("volume", q.volume);
  j.set("level", exact(q.level));
  j.set("bradlow", q.bradlow());
  return j;
}

Json divisor_json(const geometry::TorusSpec& spec, const vortexpde::DivisorSpec& div) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < div.points.size(); ++i) {
    const auto [s, t] = spec.to_lattice(div.points[i]);
    Json e = Json::object();
    e.set("s", s);
    e.set("t", t);
    e.set("x", div.points[i].real());
    e.set("y", div.points[i].imag());
    e.set("multiplicity", div.multiplicities[i]);
    arr.push(std::move(e));
  }
  return arr;
}

Json matrix_json(const std::vector<std::vector<double>>& m) {
  Json rows = Json::array();
  for (const auto& r : m) rows.push(Json::from(r));
  return rows;
}

Json h2_json(const symcoh::H2Class& c) {
  Json j = Json::object();
  j.set("class", c.to_string());
  j.set("eta", exact(c.eta_coeff()));
  if (auto t = c.theta_multiple()) j.set("theta", exact(*t));
  j.set("integral", c.integral());
  return j;
}

// --- subcommands --------------------------------------------------------------

Job solve_cmd(Params& p) {
  const long d = p.integer("d", 1, 1, kMaxDegree);
  const auto q = coupling_params(p, 1, d);
  const Complex modulus = modulus_param(p);
  const int n = resolution_param(p, 128);
  const double tol = p.real("tolerance", 1e-10, 0.0, 1e-2, true);
  const auto [pts, mult] = divisor_params(p, d);
  return [=]() {
    const auto spec = geometry::build_torus(modulus, q.volume, n);
    const auto div = build_divisor(spec, pts, mult);
    vortexpde::SolverOptions opt;
    opt.tol = tol;
    const auto sol = vortexpde::solve_vortex(spec, q, div, opt);
    const auto rep = vortexpde::observables_report(sol);
    Output o;
    o.result.set("coupling", level_json(q));
    o.result.set("divisor", divisor_json(spec, div));
    o.result.set("converged", sol.converged);
    o.result.set("iterations", sol.iterations);
    o.result.set("residual_norm", rep.residual_norm);
    o.result.set("residual_history", Json::from(sol.residual_history));
    const double flux_target = 2.0 * kPi * static_cast<double>(d);
    const double l2_target = q.tau * q.volume - 4.0 * kPi * static_cast<double>(d);
    Json obs = Json::object();
    obs.set("flux", rep.flux);
    obs.set("flux_target", flux_target);
    obs.set("flux_rel_error", std::fabs(rep.flux - flux_target) / flux_target);
    obs.set("higgs_l2", rep.higgs_l2);
    obs.set("higgs_l2_target", l2_target);
    obs.set("higgs_l2_rel_error", std::fabs(rep.higgs_l2 - l2_target) / std::fabs(l2_target));
    obs.set("higgs_min", rep.higgs_min);
    obs.set("higgs_max", rep.higgs_max);
    o.result.set("observables", obs);

    o.table.header = {"i", "j", "x", "y", "u", "higgs_density", "curvature_density"};
    const geometry::ScalarField u = sol.u();
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const Complex z = spec.point(i, j);
        o.table.add({num(long{i}), num(long{j}), num(z.real()), num(z.imag()), num(u(i, j)),
                     num(sol.observables.higgs_density(i, j)), num(sol.observables.curvature_density(i, j))});
      }
    }
    return o;
  };
}

Job metric_cmd(Params& p) {
  const long d = p.integer("d", 1, 1, 8);
  const auto q = coupling_params(p, 1, d);
  const Complex modulus = modulus_param(p);
  const int n = resolution_param(p, 64);
  const double tol = p.real("tolerance", 1e-10, 0.0, 1e-4, true);
  const double step = p.real("step_fraction", 1e-3, 0.0, 0.1, true);
  const std::string route = p.choice("route", "both", {"both", "deformation", "fiberint"});
  const auto [pts, mult] = divisor_params(p, d);
  return [=]() {
    const auto spec = geometry::build_torus(modulus, q.volume, n);
    const auto div = build_divisor(spec, pts, mult);
    modulimetric::MetricOptions opt;
    opt.tol = tol;
    opt.step_fraction = step;
    Output o;
    o.result.set("coupling", level_json(q));
    o.result.set("divisor", divisor_json(spec, div));
    o.table.header = {"route", "a", "b", "omega"};
    std::vector<modulimetric::MetricSample> samples;
    if (route != "fiberint") samples.push_back(modulimetric::omega_deformation(spec, q, div, opt));
    if (route != "deformation") samples.push_back(modulimetric::omega_fiberint(spec, q, div, opt));
    Json routes = Json::object();
    for (const auto& s : samples) {
      Json r = Json::object();
      r.set("omega", matrix_json(s.omega));
      r.set("coulomb_residual", s.coulomb_residual);
      r.set("solves", s.solves);
      routes.set(modulimetric::to_string(s.route), r);
      for (std::size_t a = 0; a < s.omega.size(); ++a) {
        for (std::size_t b = 0; b < s.omega.size(); ++b) {
          o.table.add({modulimetric::to_string(s.route), num(static_cast<long>(a)), num(static_cast<long>(b)),
                       num(s.omega[a][b])});
        }
      }
    }
    o.result.set("routes", routes);
    if (samples.size() == 2) {
      double diff = 0.0, scale = 0.0;
      for (std::size_t a = 0; a < samples[0].omega.size(); ++a) {
        for (std::size_t b = 0; b < samples[0].omega.size(); ++b) {
          diff = std::max(diff, std::fabs(samples[0].omega[a][b] - samples[1].omega[a][b]));
          scale = std::max(scale, std::fabs(samples[0].omega[a][b]));
        }
      }
      o.result.set("route_rel_difference", diff / scale);
    }
    return o;
  };
}

Job volume_cmd(Params& p) {
  const auto q = coupling_params(p, 1, 1);
  const Complex modulus = modulus_param(p);
  const int n = resolution_param(p, 64);
  const long m = p.integer("moduli_grid", 8, 4, 64);
  const double tol = p.real("tolerance", 1e-10, 0.0, 1e-4, true);
  const double step = p.real("step_fraction", 1e-3, 0.0, 0.1, true);
  const std::string route = p.choice("route", "deformation", {"deformation", "fiberint"});
  return [=]() {
    const auto spec = geometry::build_torus(modulus, q.volume, n);
    modulimetric::MetricOptions opt;
    opt.tol = tol;
    opt.step_fraction = step;
    const auto r = modulimetric::volume_d1(spec, q, static_cast<int>(m), opt,
                                           route == "deformation" ? modulimetric::Route::Deformation
                                                                  : modulimetric::Route::FiberIntegration);
    const Rational pairing = symcoh::pair_d1(symcoh::kahler_class(q));
    const double target = 2.0 * kPi * to_double(pairing);
    Output o;
    o.result.set("coupling", level_json(q));
    o.result.set("volume", r.volume);
    o.result.set("class_pairing", exact(pairing));
    o.result.set("target", target);
    o.result.set("rel_error", std::fabs(r.volume - target) / target);
    o.result.set("density_min", r.density_min);
    o.result.set("density_max", r.density_max);
    o.result.set("density_spread", (r.density_max - r.density_min) / r.density_max);
    o.table.header = {"s", "t", "omega_density"};
    for (int b = 0; b < r.moduli_grid; ++b) {
      for (int a = 0; a < r.moduli_grid; ++a) {
        o.table.add({num((a + 0.5) / r.moduli_grid), num((b + 0.5) / r.moduli_grid),
                     num(r.density[static_cast<std::size_t>(b * r.moduli_grid + a)])});
      }
    }
    return o;
  };
}

Job classes_cmd(Params& p) {
  const long g = p.integer("g", 1, 0, kMaxGenus);
  const long d = p.integer("d", 1, 1, kMaxDegree);
  const auto q = coupling_params(p, g, d);
  return [=]() {
    Output o;
    const auto w = symcoh::weil_check(q.level, g);
    o.result.set("level", exact(w.level));
    o.result.set("flat_torus_dim", w.flat_torus_dim);
    o.result.set("kahler_class", h2_json(symcoh::kahler_class(q)));
    o.result.set("c1_tangent", h2_json(symcoh::c1_tangent(g, d)));
    const auto pre = symcoh::prequantum_class_check(q);
    Json pj = Json::object();
    pj.set("canonical", pre.canonical.to_string());
    pj.set("deg_m", exact(pre.deg_m));
    pj.set("lhs", pre.lhs.to_string());
    pj.set("rhs", pre.rhs.to_string());
    pj.set("holds", pre.holds);
    o.result.set("prequantum", pj);
    const auto ke = symcoh::ke_check(q);
    Json kj = Json::object();
    kj.set("level_matches", ke.level_matches);
    kj.set("genus_condition", ke.genus_condition);
    kj.set("compatible", ke.compatible());
    o.result.set("kahler_einstein", kj);
    if (d == 1) {
      const Rational pr = symcoh::pair_d1(symcoh::kahler_class(q));
      o.result.set("pairing_with_sigma", exact(pr));
      o.result.set("volume_prediction", 2.0 * kPi * to_double(pr));
    }
    o.table.header = {"g", "d", "k", "kahler_class", "c1_tangent", "prequantum_holds", "ke_compatible"};
    o.table.add({num(g), num(d), w.level.get_str(), symcoh::kahler_class(q).to_string(),
                 symcoh::c1_tangent(g, d).to_string(), yes(pre.holds), yes(ke.compatible())});
    return o;
  };
}

Job dims_cmd(Params& p) {
  const long g = p.integer("g", 1, 0, kMaxGenus);
  const long d = p.integer("d", 1, 1, kMaxDegree);
  const long k = p.integer("k", std::nullopt, 1, kMaxLevel);
  const long h1 = p.integer("h1", 0, 0, kMaxGenus);
  return [=]() {
    Output o;
    const auto r = hilbert::hilbert_dim(g, d, k, h1);
    const auto ledger = hilbert::bundle_ledger(g, k);
    const auto stratum = hilbert::jump_stratum(g, k);
    o.result.set("dim", exact(r.dim));
    o.result.set("generic_dim", exact(r.generic_dim));
    o.result.set("h0", r.h0);
    o.result.set("h1", r.h1);
    o.result.set("jumped", r.jumped);
    Json lj = Json::object();
    lj.set("deg_q", ledger.deg_q);
    lj.set("deg_spin", ledger.deg_spin);
    lj.set("deg_m", ledger.deg_m);
    lj.set("deg_qk", ledger.deg_qk);
    o.result.set("bundles", lj);
    Json sj = Json::object();
    sj.set("jumps_possible", stratum.jumps_possible);
    sj.set("unique_top_jump", stratum.unique_top_jump);
    sj.set("max_h1", stratum.max_h1);
    o.result.set("jump_stratum", sj);
    o.table.header = {"g", "d", "k", "h1", "h0", "dim", "generic_dim", "jumped"};
    o.table.add({num(g), num(d), num(k), num(h1), num(r.h0), r.dim.get_str(), r.generic_dim.get_str(),
                 yes(r.jumped)});
    return o;
  };
}

Json metaplectic_json(const symcoh::MetaplecticVerdict& v) {
  Json j = Json::object();
  j.set("admits", v.closed_form);
  j.set("closed_form", v.closed_form);
  j.set("certificate", v.certificate);
  j.set("agree", v.agree());
  j.set("c1_eta", exact(v.c1_eta));
  j.set("eta_part_even", v.eta_part_even);
  j.set("theta_part_even", v.theta_part_even);
  if (v.d1_pairing) j.set("d1_pairing", exact(*v.d1_pairing));
  j.set("two_adic_valuation_g_factorial", v.two_adic_factorial);
  j.set("two_pow_g_divides_g_factorial", v.two_pow_g_divides_factorial);
  return j;
}

Job metaplectic_cmd(Params& p) {
  const long g = p.integer("g", std::nullopt, 0, kMaxGenus);
  const long d = p.integer("d", std::nullopt, 1, kMaxDegree);
  return [=]() {
    Output o;
    const auto v = symcoh::metaplectic_check(g, d);
    o.result = metaplectic_json(v);
    o.table.header = {"g", "d", "closed_form", "certificate", "agree"};
    o.table.add({num(g), num(d), yes(v.closed_form), yes(v.certificate), yes(v.agree())});
    return o;
  };
}

Json obstruction_json(const obstruct::ObstructionReport& r) {
  Json j = Json::object();
  Json e = Json::object();
  e.set("rank", exact(r.exterior.rank));
  e.set("c1_theta", exact(r.exterior.c1_theta));
  e.set("c2_theta2", exact(r.exterior.c2_theta2));
  j.set("exterior_power", e);
  j.set("lhs", exact(r.lhs));
  j.set("rhs", exact(r.rhs));
  j.set("rhs_closed_form", exact(r.rhs_closed));
  j.set("obstruction", exact(r.obstruction));
  j.set("flat_possible", r.flat_possible);
  j.set("closed_form_verdict", r.closed_form_verdict);
  return j;
}

Job obstruction_cmd(Params& p) {
  const long g = p.integer("g", std::nullopt, 0, kMaxGenus);
  const long k = p.integer("k", std::nullopt, 0, 2000);
  const long d = p.integer("d", std::nullopt, 0, 2000);
  return [=]() {
    Output o;
    const auto r = obstruct::proj_flat_test(g, k, d);
    o.result = obstruction_json(r);
    o.table.header = {"g", "k", "d", "lhs", "rhs", "obstruction", "flat_possible"};
    o.table.add({num(g), num(k), num(d), r.lhs.get_str(), r.rhs.get_str(), r.obstruction.get_str(),
                 yes(r.flat_possible)});
    return o;
  };
}

Json zeta_json(const zetadet::ZetaResult& z) {
  Json j = Json::object();
  j.set("modulus", Json::from({z.modulus.real(), z.modulus.imag()}));
  j.set("area", z.area);
  j.set("normalization", z.normalization);
  j.set("zeta_zero", z.zeta_zero);
  j.set("zeta_prime_zero", z.zeta_prime_zero);
  j.set("quillen_factor", z.quillen_factor);
  j.set("method_spread", z.method_spread);
  Json routes = Json::object();
  Json a = Json::object();
  a.set("zeta_zero", z.zeta_zero_mellin);
  a.set("zeta_prime_zero", z.zeta_prime_mellin);
  Json b = Json::object();
  b.set("zeta_zero", z.zeta_zero_cutoff);
  b.set("zeta_prime_zero", z.zeta_prime_cutoff);
  routes.set("mellin", a);
  routes.set("heat_cutoff", b);
  j.set("routes", routes);
  Json at = Json::array();
  for (const auto& [t, v] : z.zeta_at) {
    Json e = Json::object();
    e.set("t", t);
    e.set("zeta", v);
    at.push(std::move(e));
  }
  j.set("zeta_at", at);
  return j;
}

Job zeta_cmd(Params& p) {
  const Complex modulus = modulus_param(p);
  const double volume = p.real("volume", 1.0, 0.0, 1e8, true);
  const auto ts = p.reals("t", {2.0, 3.0, 4.0}, 1.0, 40.0, true);
  const double tol = p.real("tolerance", 1e-8, 0.0, 1.0, true);
  const int n = resolution_param(p, 128);
  return [=]() {
    const auto spec = geometry::build_torus(modulus, volume, n);
    const auto z = zetadet::zeta_prime_zero(spec, ts, tol);
    Output o;
    o.result = zeta_json(z);
    // lowest levels with their grid check
    const double lambda1 = 4.0 * kPi * kPi / (volume * modulus.imag()) * std::min(1.0, std::norm(modulus));
    const auto ev = zetadet::dual_lattice_eigenvalues(spec, 6.0 * lambda1, 8);
    Json levels = Json::array();
    for (const auto& e : ev.levels) {
      Json l = Json::object();
      l.set("lambda", e.lambda);
      l.set("multiplicity", e.multiplicity);
      levels.push(std::move(l));
    }
    o.result.set("eigenvalues", levels);
    o.result.set("eigen_grid_defect", ev.grid_defect);
    o.table.header = {"t", "zeta"};
    for (const auto& [t, v] : z.zeta_at) o.table.add({num(t), num(v)});
    return o;
  };
}

Job sweep_cmd(Params& p) {
  const std::string kind = p.choice("sweep", "dims", {"dims", "metaplectic", "obstruction", "prequantum", "zeta"});
  if (kind == "dims") {
    const long g = p.integer("g", 1, 0, kMaxGenus);
    const long kmax = p.integer("k_max", 12, 2, 200);
    return [=]() {
      Output o;
      o.table.header = {"g", "d", "k", "dim", "generic_dim", "binomial_match"};
      long rows = 0, mismatches = 0;
      for (long k = 2; k <= kmax; ++k) {
        for (long d = 1; d < k; ++d) {
          const auto r = hilbert::hilbert_dim(g, d, k, 0);
          const bool ok = r.dim == binomial(k, d) && r.dim == r.generic_dim;
          mismatches += ok ? 0 : 1;
          ++rows;
          o.table.add({num(g), num(d), num(k), r.dim.get_str(), r.generic_dim.get_str(), yes(ok)});
        }
      }
      o.result.set("rows", rows);
      o.result.set("mismatches", mismatches);
      return o;
    };
  }
  if (kind == "metaplectic") {
    const long gmax = p.integer("g_max", 8, 0, kMaxGenus);
    const long dmax = p.integer("d_max", 8, 1, kMaxDegree);
    return [=]() {
      Output o;
      o.table.header = {"g", "d", "closed_form", "certificate", "agree"};
      long rows = 0, disagreements = 0;
      Json admitting = Json::array();
      for (long g = 0; g <= gmax; ++g) {
        for (long d = 1; d <= dmax; ++d) {
          const auto v = symcoh::metaplectic_check(g, d);
          disagreements += v.agree() ? 0 : 1;
          ++rows;
          if (v.certificate) admitting.push(Json::Array{Json(g), Json(d)});
          o.table.add({num(g), num(d), yes(v.closed_form), yes(v.certificate), yes(v.agree())});
        }
      }
      o.result.set("rows", rows);
      o.result.set("disagreements", disagreements);
      o.result.set("admitting_pairs", admitting);
      return o;
    };
  }
  if (kind == "obstruction") {
    const long gmax = p.integer("g_max", 4, 2, 16);
    const long kmax = p.integer("k_max", 12, 2, 200);
    return [=]() {
      Output o;
      o.table.header = {"g", "k", "d", "lhs", "rhs", "obstruction", "flat_possible", "k_equals_d"};
      long rows = 0, mismatches = 0;
      for (long g = 2; g <= gmax; ++g) {
        for (long k = g; k <= kmax; ++k) {
          for (long d = 1; d <= k; ++d) {
            const auto r = obstruct::proj_flat_test(g, k, d);
            mismatches += (r.flat_possible == (k == d)) ? 0 : 1;
            ++rows;
            o.table.add({num(g), num(k), num(d), r.lhs.get_str(), r.rhs.get_str(), r.obstruction.get_str(),
                         yes(r.flat_possible), yes(k == d)});
          }
        }
      }
      o.result.set("rows", rows);
      o.result.set("mismatches", mismatches);
      return o;
    };
  }
  if (kind == "prequantum") {
    const long gmax = p.integer("g_max", 20, 0, kMaxGenus);
    const long kmax = p.integer("k_max", 40, 2, 400);
    return [=]() {
      Output o;
      o.table.header = {"g", "d", "k", "lhs", "rhs", "holds"};
      long rows = 0, failures = 0;
      for (long g = 0; g <= gmax; ++g) {
        for (long k = 2; k <= kmax; ++k) {
          for (long d = 1; d < k; ++d) {
            const auto q = vortexpde::QuantizationSpec::from_level(g, d, Rational(k), 1.0);
            const auto r = symcoh::prequantum_class_check(q);
            failures += r.holds ? 0 : 1;
            ++rows;
            o.table.add({num(g), num(d), num(k), r.lhs.to_string(), r.rhs.to_string(), yes(r.holds)});
          }
        }
      }
      o.result.set("rows", rows);
      o.result.set("failures", failures);
      return o;
    };
  }
  // zeta'(0) against Im(modulus); the imaginary part of `modulus` is replaced by the sweep
  const double re = modulus_param(p).real();
  const double volume = p.real("volume", 1.0, 0.0, 1e8, true);
  const double lo = p.real("im_min", 0.5, 0.0, 1e3, true);
  const double hi = p.real("im_max", 3.0, 0.0, 1e3, true);
  const long samples = p.integer("samples", 11, 2, 1000);
  if (hi < lo) p.fail("im_max", "below im_min");
  return [=]() {
    Output o;
    o.table.header = {"re", "im", "zeta_prime_zero", "quillen_factor", "method_spread"};
    double worst = 0.0;
    for (long i = 0; i < samples; ++i) {
      const double im = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
      const auto spec = geometry::build_torus({re, im}, volume, 32);
      const auto z = zetadet::zeta_prime_zero(spec);
      worst = std::max(worst, z.method_spread);
      o.table.add({num(re), num(im), num(z.zeta_prime_zero), num(z.quillen_factor), num(z.method_spread)});
    }
    o.result.set("rows", samples);
    o.result.set("max_method_spread", worst);
    return o;
  };
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"solve", solve_cmd},         {"metric", metric_cmd},   {"volume", volume_cmd},
      {"classes", classes_cmd},     {"dims", dims_cmd},       {"metaplectic", metaplectic_cmd},
      {"obstruction", obstruction_cmd}, {"zeta", zeta_cmd}, {"sweep", sweep_cmd},
  };
  return h;
}

}  // namespace

RunResult execute(const RunConfig& config) {
  for (const auto& [key, value] : config.parameters) {
    if (!is_known_key(key) || key == "subcommand") throw ConfigError(key, "unknown key");
  }
  const auto it = handlers().find(config.subcommand);
  if (it == handlers().end()) throw ConfigError("subcommand", "unknown subcommand '" + config.subcommand + "'");

  Params params(config.parameters);
  RunResult rr;
  const std::string format = params.choice("format", "json", {"json", "csv"});
  rr.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  // output locations do not change the content, so they stay out of the header
  rr.output = config.parameters.count("output") ? config.parameters.at("output") : "-";
  rr.csv_path = config.parameters.count("csv") ? config.parameters.at("csv") : "";
  if (rr.output.empty()) throw ConfigError("output", "empty path");
  if (rr.format == OutputFormat::Csv && !rr.csv_path.empty()) {
    throw ConfigError("csv", "only meaningful with format = json");
  }
  Job job = it->second(params);

  Json header = Json::object();
  header.set("name", "vortexq");
  header.set("version", kVersion);
  rr.report.set("artifact", header);
  rr.report.set("subcommand", config.subcommand);
  rr.report.set("config", params.resolved());

  try {
    Output out = job();
    rr.report.set("status", "ok");
    rr.report.set("result", std::move(out.result));
    rr.table = std::move(out.table);
    rr.exit_code = kExitOk;
  } catch (const vortexpde::DivergenceError& e) {
    Json err = Json::object();
    err.set("kind", std::string(to_string(e.kind())));
    err.set("message", e.what());
    err.set("residual_history", Json::from(e.last().residual_history));
    rr.report.set("status", "internal_error");
    rr.report.set("error", err);
    rr.exit_code = kExitInternal;
  } catch (const Error& e) {
    Json err = Json::object();
    err.set("kind", std::string(to_string(e.kind())));
    err.set("message", e.what());
    rr.report.set("status", e.is_domain() ? "domain_error" : "internal_error");
    rr.report.set("error", err);
    rr.exit_code = e.is_domain() ? kExitDomain : kExitInternal;
  } catch (const std::exception& e) {
    Json err = Json::object();
    err.set("kind", "Internal");
    err.set("message", e.what());
    rr.report.set("status", "internal_error");
    rr.report.set("error", err);
    rr.exit_code = kExitInternal;
  }

  std::string line = "vortexq " + std::string(kVersion) + " " + config.subcommand;
  std::string compact = params.resolved().dump(-1);
  compact.pop_back();
  rr.table.preamble = {line, "config " + compact};
  return rr;
}

}  // namespace vortexq::cli
