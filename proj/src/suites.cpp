#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lcap/cli.hpp"
#include "lcap/flow.hpp"
#include "lcap/hopf.hpp"
#include "lcap/theorems.hpp"
#include "lcap/variational.hpp"

namespace lcap::cli {

namespace {

Verdict verdict(std::string name, bool pass, double value, double tol, std::string witness = {}) {
  return Verdict{std::move(name), pass, std::move(witness), value, tol};
}

bool one_sided(Side s) { return s == Side::Above || s == Side::Below; }

std::string side_witness(const OneSideReport& r) {
  std::string w = to_string(r.side);
  if (r.witness) w += " vertex=" + std::to_string(*r.witness);
  return w;
}

// --- covering -----------------------------------------------------------------------------

void covering_suite(std::vector<Verdict>& out) {
  constexpr int K = 2048;
  constexpr double tol = 1e-8;
  const auto waist = SampledCurve::geodesic_graph([](double) { return 0.0; }, K);
  const auto cw = check_covering(waist);
  out.push_back(verdict("covering: waist is a covering of winding 1", cw.graph_on_waist && cw.winding == 1,
                        cw.norm_identity_error, tol));

  const auto tilt = SampledCurve::tilted_section(0.4, 0.2, K);
  const auto ct = check_covering(tilt);
  out.push_back(verdict("covering: tilted section, full identity", ct.full_identity_error < tol,
                        ct.full_identity_error, tol));
  out.push_back(verdict("covering: tilted section, norm identity", ct.norm_identity_error < tol,
                        ct.norm_identity_error, tol));
  out.push_back(verdict("covering: tilted section is a waist graph",
                        ct.graph_on_waist && ct.embedded && std::abs(ct.winding) == 1, ct.winding, 0.0));

  const auto family = random_spacelike_family(100, K, 2024);
  double full = 0.0, plain = 0.0;
  int bad = 0;
  for (const auto& c : family) {
    const auto r = check_covering(c);
    full = std::max(full, r.full_identity_error);
    plain = std::max(plain, r.norm_identity_error);
    if (!r.spacelike || (r.embedded && !(r.graph_on_waist && std::abs(r.winding) == 1))) ++bad;
  }
  out.push_back(verdict("covering: family of 100, full identity", full < tol, full, tol));
  out.push_back(verdict("covering: family of 100, norm identity", plain < tol, plain, tol));
  out.push_back(verdict("covering: family of 100, embedded => winding 1", bad == 0, bad, 0.0));

  const auto null_curve = SampledCurve::geodesic_graph([](double s) { return std::sin(s); }, K);
  const auto cn = check_covering(null_curve);
  const bool caught = !cn.spacelike && cn.failure_sample && (*cn.failure_sample == 0 || *cn.failure_sample == K / 2);
  out.push_back(verdict("covering: null tangent rejected", caught, cn.failure_norm, 1e-10,
                        cn.failure_sample ? "sample=" + std::to_string(*cn.failure_sample) : "none"));

  const auto pw = check_graph_on_plane(waist);
  out.push_back(verdict("graph-on-plane: waist", pw.ok(), pw.min_separation, 1e-12));
  const auto pt = check_graph_on_plane(tilt);
  out.push_back(verdict("graph-on-plane: tilted section", pt.ok(), pt.min_separation, 1e-12));
  auto bad_curve = tilt;
  const Vec3 q = project_pi(bad_curve.points[100]);
  bad_curve.points[900] = geodesic_param(-std::asinh(bad_curve.points[100].z), q);
  const auto pb = check_graph_on_plane(bad_curve);
  out.push_back(verdict("graph-on-plane: injected pair F(t,q), F(-t,q) rejected", !pb.ok() && pb.witness.has_value(),
                        pb.min_separation, 1e-12,
                        pb.witness ? std::to_string(pb.witness->first) + "," + std::to_string(pb.witness->second)
                                   : "none"));
}

// --- one side ----------------------------------------------------------------------------

void one_side_suite(std::vector<Verdict>& out) {
  const SpacelikePlane P{};
  const auto cap = SpacelikeGraph::build(
      Domain::disc(1.0, 32), [](double x, double y) { return std::sqrt(1.0 + x * x + y * y) - std::sqrt(2.0); });
  const auto rc = check_one_side_plane(cap, P);
  out.push_back(verdict("one-side plane: translated cap", one_sided(rc.side), rc.max_value, 0.0, side_witness(rc)));

  const auto flat = SpacelikeGraph::build(Domain::disc(1.0, 32), [](double, double) { return 0.0; });
  const auto rf = check_one_side_plane(flat, P);
  out.push_back(verdict("one-side plane: flat disc contained", rf.side == Side::Contained,
                        std::max(-rf.min_value, rf.max_value), 1e-8, side_witness(rf)));

  {
    const double rb = std::sqrt(0.69);
    const auto init = SpacelikeGraph::build(
        Domain::disc(rb, 32), [](double x, double y) { return std::sqrt(1.0 + x * x + y * y) - 1.3; }, P);
    SolveOptions o;
    o.lambda = -1.3;
    o.H_target = 1.0;
    const auto res = solve_stationary(P, o, perturb(init, 0.02, 2));
    const auto r = check_one_side_plane(res.graph, P);
    out.push_back(verdict("one-side plane: solve lambda=-1.3 H=1", res.converged && one_sided(r.side),
                          res.report.residual, 1e-6, side_witness(r)));
  }
  {
    const auto init = SpacelikeGraph::build(Domain::disc(1.0, 32), [](double, double) { return 0.0; }, P);
    SolveOptions o;
    o.lambda = -1.0;
    o.H_target = 0.0;
    const auto res = solve_stationary(P, o, perturb(init, 0.02, 2));
    const auto r = check_one_side_plane(res.graph, P);
    out.push_back(verdict("one-side plane: solve H=0 contained", res.converged && r.side == Side::Contained,
                          std::max(-r.min_value, r.max_value), 1e-8, side_witness(r)));
  }

  const HyperbolicPlane Hn{{0.0, 0.0, 0.0}, 1.0, Branch::Upper};
  {
    const double t0 = 0.5;
    const auto leaf = SpacelikeGraph::build(Domain::disc(1.5, 16),
                                            [=](double x, double y) { return t0 + std::sqrt(1.0 + x * x + y * y); });
    double err = 0.0;
    for (const auto& x : leaf.positions()) err = std::max(err, std::abs(foliation_parameter(Hn, x) - t0));
    out.push_back(verdict("one-side hyperbolic: leaf has constant parameter", err < 1e-12, err, 1e-12));
  }
  {
    const double rb = 1.5;
    const auto own = SpacelikeGraph::build(
        Domain::disc(rb, 64), [](double x, double y) { return std::sqrt(1.0 + x * x + y * y); }, Hn);
    const auto r = check_one_side_hyperbolic(own, Hn);
    out.push_back(verdict("one-side hyperbolic: own mesh contained", r.side == Side::Contained,
                          std::max(-r.min_value, r.max_value), 1e-10, side_witness(r)));
  }
  {
    const double r = 0.3, p3 = 0.6;
    const double x3 = (1.0 + p3 * p3 - r * r) / (2.0 * p3);
    const double rb = std::sqrt(x3 * x3 - 1.0);
    const double lambda = (-1.0 - r * r + p3 * p3) / (2.0 * r);
    const auto init = SpacelikeGraph::build(
        Domain::disc(rb, 32), [=](double x, double y) { return p3 + std::sqrt(r * r + x * x + y * y); }, Hn);
    SolveOptions o;
    o.lambda = lambda;
    o.H_target = 1.0 / r;
    const auto res = solve_stationary(Hn, o, perturb(init, 0.01, 0));
    const auto rep = check_one_side_hyperbolic(res.graph, Hn);
    out.push_back(verdict("one-side hyperbolic: solve H=1/0.3", res.converged && one_sided(rep.side),
                          res.report.residual, 1e-6, side_witness(rep)));
  }
  {
    const RotationalProfile prof(1.0, 0.0, 0.0, 1.0, 3);
    const auto r = check_one_side_plane(prof, 200);
    out.push_back(verdict("one-side plane: n=3 profile H=1", one_sided(r.side), r.max_value, 0.0, side_witness(r)));
  }
  {
    const RotationalProfile prof(2.0, 0.0, 0.0, 0.8, 3);
    const double offset = std::sqrt(1.0 + 0.64) - prof.height(0.8);
    const auto r = check_one_side_hyperbolic(prof, offset, Hn, 200);
    out.push_back(
        verdict("one-side hyperbolic: n=3 profile H=2", one_sided(r.side), r.max_value, 0.0, side_witness(r)));
  }
}

// --- hopf --------------------------------------------------------------------------------

double boundary_max(const HopfField& f) {
  double m = 0.0;
  for (double v : boundary_imz2phi(f)) m = std::max(m, std::abs(v));
  return m;
}

void hopf_suite(std::vector<Verdict>& out) {
  constexpr double tol = 1e-6;
  struct Cap {
    double c, r;
  };
  for (const Cap cap : {Cap{-std::sqrt(2.0), 1.0}, Cap{-2.0, 1.2}}) {
    const double x3b = cap_boundary_height(cap.c, cap.r);
    const double rb2 = 1.0 + x3b * x3b;
    const RotationalProfile prof(1.0 / cap.r, 0.0, 0.0, std::sqrt(rb2));
    const auto patch = conformal_parametrize_rotational(prof, 128, 256, cap.c + cap.r);
    const auto f = hopf_differential(patch);
    const std::string tag = " (c=" + std::to_string(cap.c).substr(0, 6) + ", r=" + std::to_string(cap.r).substr(0, 4) + ")";
    out.push_back(verdict("hopf: umbilic cap max|phi|" + tag, f.max_abs() < tol, f.max_abs(), tol));
    const double bm = boundary_max(f);
    out.push_back(verdict("hopf: stationary cap boundary Im(z^2 phi)" + tag, bm < tol, bm, tol));
    const double conf = conformality_residual(patch);
    out.push_back(verdict("hopf: conformality" + tag, conf < 1e-8, conf, 1e-8));
    const double exact = 2.0 * std::numbers::pi * cap.r * (std::sqrt(cap.r * cap.r + rb2) - cap.r);
    const double aerr = std::abs(patch_area(patch) / exact - 1.0);
    out.push_back(verdict("hopf: conformal area" + tag, aerr < tol, aerr, tol));
  }

  const RotationalProfile ann(1.0, 0.5, 0.3, 1.2);
  std::vector<double> res;
  double min_phi = 0.0, derived = 0.0;
  for (int J : {32, 64, 128}) {
    const auto patch = conformal_parametrize_rotational(ann, J, 2 * J);
    const auto f = hopf_differential(patch);
    res.push_back(holomorphicity_residual(f));
    if (J == 128) {
      min_phi = f.min_abs_interior();
      derived = umbilicity_diagnostic(f).derived_error;
    }
  }
  const double order = std::log2(res[1] / res[2]);
  out.push_back(verdict("hopf: CMC annulus holomorphicity order", order >= 1.8, order, 1.8));
  out.push_back(verdict("hopf: CMC annulus is not umbilic", min_phi > 1e-2, min_phi, 1e-2));
  out.push_back(verdict("hopf: |phi|^2 = 4E^4(H^2+K) on the annulus", derived < 1e-4, derived, 1e-4));

  RotationalSurface bent;
  bent.slope = [](double rho) { return 0.3 * rho * rho; };
  bent.rho0 = 0.0;
  bent.rho1 = 1.0;
  const auto p64 = conformal_parametrize_rotational(bent, 64, 128);
  const auto p128 = conformal_parametrize_rotational(bent, 128, 256);
  const double r64 = holomorphicity_residual(hopf_differential(p64));
  const double r128 = holomorphicity_residual(hopf_differential(p128));
  out.push_back(verdict("hopf: non-CMC residual does not vanish", r128 > 0.5 * r64 && r128 > 1e-2, r128, 1e-2));
}

// --- gradients ---------------------------------------------------------------------------

void gradients_suite(std::vector<Verdict>& out) {
  constexpr double tol = 1e-3;
  constexpr double h = 1e-5;
  struct Case {
    const char* name;
    SupportSurface s;
    SpacelikeGraph g;
    double lambda;
  };
  std::vector<Case> cases;
  cases.push_back({"pseudosphere", Pseudosphere{},
                   SpacelikeGraph::build(Domain::disc(1.0, 16),
                                         [](double x, double y) {
                                           return std::sqrt(1 + x * x + y * y) - std::sqrt(2.0) +
                                                  0.03 * (1 - x * x - y * y) * x;
                                         },
                                         Pseudosphere{}),
                   0.7});
  const SpacelikePlane P{};
  cases.push_back({"plane", P,
                   SpacelikeGraph::build(Domain::disc(std::sqrt(0.69), 16),
                                         [](double x, double y) {
                                           return std::sqrt(1 + x * x + y * y) - 1.3 + 0.02 * (0.69 - x * x - y * y) * y;
                                         },
                                         P),
                   -1.3});
  for (const auto& c : cases) {
    double e_err = 0.0, v_err = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto xi = random_admissible_field(c.g, c.s, seed);
      const auto gp = deform(c.g, c.s, xi, h);
      const auto gm = deform(c.g, c.s, xi, -h);
      const double dE = (energy(gp, c.s, c.lambda).energy - energy(gm, c.s, c.lambda).energy) / (2 * h);
      const double dV = (enclosed_volume(gp, c.s) - enclosed_volume(gm, c.s)) / (2 * h);
      e_err = std::max(e_err, std::abs(first_variation_energy(c.g, c.s, c.lambda, xi) - dE) / std::abs(dE));
      v_err = std::max(v_err, std::abs(first_variation_volume(c.g, xi) - dV) / std::abs(dV));
    }
    out.push_back(verdict(std::string("gradients: energy variation, ") + c.name, e_err < tol, e_err, tol));
    out.push_back(verdict(std::string("gradients: volume variation, ") + c.name, v_err < tol, v_err, tol));
  }
}

}  // namespace

std::vector<std::string> suite_names() { return {"covering", "one-side", "hopf", "gradients"}; }

std::vector<Verdict> run_suite(const std::string& name) {
  const auto names = suite_names();
  if (name != "all" && std::find(names.begin(), names.end(), name) == names.end())
    throw Error("unknown suite '" + name + "'");
  const bool all = name == "all";
  std::vector<Verdict> out;
  if (all || name == "covering") covering_suite(out);
  if (all || name == "one-side") one_side_suite(out);
  if (all || name == "hopf") hopf_suite(out);
  if (all || name == "gradients") gradients_suite(out);
  return out;
}

}  // namespace lcap::cli
