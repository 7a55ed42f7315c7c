// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lcap/cli.hpp"
#include "lcap/flow.hpp"
#include "lcap/hopf.hpp"
#include "lcap/theorems.hpp"
#include "lcap/variational.hpp"

using namespace lcap;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

// ---------------------------------------------------------------------------------------
// 1. Mean curvature of H^2_+(p,r) and H^2_-(p,r) caps.

double cap_curvature_error(int n, double c, double r, bool upper) {
  const double x3b = cap_boundary_height(c, r);
  const double rb = std::sqrt(1.0 + x3b * x3b);
  const double s = upper ? 1.0 : -1.0;
  const auto g = SpacelikeGraph::build(Domain::disc(rb, n),
                                       [=](double x, double y) { return c + s * std::sqrt(r * r + x * x + y * y); });
  const auto H = mean_curvature(g);
  double err = 0.0;
  for (int v : g.interior()) err = std::max(err, std::abs(H[v] * r * s - 1.0));
  return err;
}

Outcome criterion_umbilic() {
  struct Cap {
    double c, r;
    bool upper;
  };
  bool pass = true;
  std::string detail;
  for (const Cap cap : {Cap{-std::sqrt(2.0), 1.0, true}, Cap{-2.0, 1.2, true}, Cap{std::sqrt(2.0), 1.0, false}}) {
    const double e32 = cap_curvature_error(32, cap.c, cap.r, cap.upper);
    const double e64 = cap_curvature_error(64, cap.c, cap.r, cap.upper);
    const double e128 = cap_curvature_error(128, cap.c, cap.r, cap.upper);
    const double order = std::log2(e32 / e128) / 2.0;
    pass = pass && e128 < 1e-3 && order >= 1.8 && std::log2(e64 / e128) >= 1.8;
    detail += std::string(cap.upper ? " H+" : " H-") + "(c=" + fmt("%.3f", cap.c) + ",r=" + fmt("%.1f", cap.r) +
              "): err128=" + sci(e128) + " order=" + fmt("%.2f", order);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------------------
// 2. Contact angle along M ∩ S^2_1 for planes and hyperbolic planes.

double surface_height(const SupportSurface& m, double x, double y) {
  if (const auto* pl = std::get_if<SpacelikePlane>(&m)) {
    // <x - p, v> = 0 solved for x3.
    const Vec3& p = pl->p;
    const Vec3& v = pl->v;
    return p.z + ((x - p.x) * v.x + (y - p.y) * v.y) / v.z;
  }
  const auto& h = std::get<HyperbolicPlane>(m);
  const double d = std::sqrt(h.r * h.r + (x - h.p.x) * (x - h.p.x) + (y - h.p.y) * (y - h.p.y));
  return h.branch == Branch::Upper ? h.p.z + d : h.p.z - d;
}

// Polar mesh whose outer ring is exactly M ∩ S^2_1 and whose rings shrink toward the axis.
SpacelikeGraph section_mesh(const SupportSurface& m, int rings, int sectors) {
  const auto boundary = support_intersection(m, sectors);
  Domain d;
  d.kind = Domain::Kind::Disc;
  d.rings = rings;
  d.sectors = sectors;
  auto topo = make_topology(d);
  std::vector<Vec3> pos(static_cast<std::size_t>(d.vertex_count()));
  pos[0] = {0.0, 0.0, surface_height(m, 0.0, 0.0)};
  for (int j = 1; j <= rings; ++j)
    for (int k = 0; k < sectors; ++k) {
      const double s = static_cast<double>(j) / rings;
      const double x = s * boundary[k].x;
      const double y = s * boundary[k].y;
      pos[d.index(j, k)] = j == rings ? boundary[k] : Vec3{x, y, surface_height(m, x, y)};
    }
  return SpacelikeGraph::from_positions(std::move(topo), std::move(pos), SupportSurface{Pseudosphere{}});
}

Outcome criterion_contact_angle() {
  std::vector<std::pair<std::string, SupportSurface>> cases;
  cases.emplace_back("H+((0,0,-sqrt2),1)", HyperbolicPlane{{0, 0, -std::sqrt(2.0)}, 1.0, Branch::Upper});
  cases.emplace_back("H+((0,0,-2),1.2)", HyperbolicPlane{{0, 0, -2.0}, 1.2, Branch::Upper});
  cases.emplace_back("H+((0,0,-0.5),2)", HyperbolicPlane{{0, 0, -0.5}, 2.0, Branch::Upper});
  cases.emplace_back("H-((0,0,sqrt2),1)", HyperbolicPlane{{0, 0, std::sqrt(2.0)}, 1.0, Branch::Lower});
  cases.emplace_back("x3=0", SpacelikePlane::make({0, 0, 0}, {0, 0, 1}));
  cases.emplace_back("x3=0.5", SpacelikePlane::make({0, 0, 0.5}, {0, 0, 1}));
  cases.emplace_back("x3=-0.8", SpacelikePlane::make({0, 0, -0.8}, {0, 0, 1}));
  cases.emplace_back("x3=0.4x1+0.2", SpacelikePlane::make({0, 0, 0.2}, {0.4, 0, 1}));
  bool pass = true;
  double worst = 0.0;
  double reference = 0.0;
  for (const auto& [name, m] : cases) {
    const auto g = section_mesh(m, 64, 1024);
    const double exact = analytic_contact_angle(m);
    double err = 0.0;
    for (const auto& f : boundary_frames(g, Pseudosphere{})) err = std::max(err, std::abs(inner(f.N, f.N_sigma) - exact));
    worst = std::max(worst, err);
    if (name == "H+((0,0,-sqrt2),1)") reference = exact;
  }
  pass = worst < 1e-6 && std::abs(reference - 1.0) < 1e-12;
  return {pass, " " + std::to_string(cases.size()) + " sections x 1024 samples: max|<N,N_S> - closed form|=" +
                    sci(worst) + " reference value=" + fmt("%.12f", reference)};
}

// ---------------------------------------------------------------------------------------
// 3. First variations against centered differences.

Outcome criterion_gradients() {
  constexpr double h = 1e-5;
  struct Case {
    SupportSurface s;
    SpacelikeGraph g;
    double lambda;
    int fields;
  };
  const SpacelikePlane P{};
  const HyperbolicPlane Hn{{0, 0, 0}, 1.0, Branch::Upper};
  std::vector<Case> cases;
  cases.push_back({Pseudosphere{},
                   SpacelikeGraph::build(Domain::disc(1.0, 16),
                                         [](double x, double y) {
                                           return std::sqrt(1 + x * x + y * y) - std::sqrt(2.0) +
                                                  0.03 * (1 - x * x - y * y) * x;
                                         },
                                         Pseudosphere{}),
                   0.7, 20});
  cases.push_back({P,
                   SpacelikeGraph::build(Domain::disc(std::sqrt(0.69), 16),
                                         [](double x, double y) {
                                           return std::sqrt(1 + x * x + y * y) - 1.3 + 0.02 * (0.69 - x * x - y * y) * y;
                                         },
                                         P),
                   -1.3, 15});
  {
    const double r = 0.5, p3 = std::sqrt(0.05);
    const double x3 = (1.0 + p3 * p3 - r * r) / (2.0 * p3);
    const double rb = std::sqrt(x3 * x3 - 1.0);
    cases.push_back({Hn,
                     SpacelikeGraph::build(Domain::disc(rb, 16),
                                           [=](double x, double y) {
                                             return p3 + std::sqrt(r * r + x * x + y * y) +
                                                    0.003 * (rb * rb - x * x - y * y) * (x + 0.5 * y);
                                           },
                                           Hn),
                     -1.2, 15});
  }
  double e_worst = 0.0, v_worst = 0.0;
  int count = 0;
  for (const auto& c : cases) {
    for (int i = 0; i < c.fields; ++i) {
      const auto xi = random_admissible_field(c.g, c.s, 1000 + count);
      const auto gp = deform(c.g, c.s, xi, h);
      const auto gm = deform(c.g, c.s, xi, -h);
      const double dE = (energy(gp, c.s, c.lambda).energy - energy(gm, c.s, c.lambda).energy) / (2 * h);
      const double dV = (enclosed_volume(gp, c.s) - enclosed_volume(gm, c.s)) / (2 * h);
      e_worst = std::max(e_worst, std::abs(first_variation_energy(c.g, c.s, c.lambda, xi) - dE) / std::abs(dE));
      v_worst = std::max(v_worst, std::abs(first_variation_volume(c.g, xi) - dV) / std::abs(dV));
      ++count;
    }
  }
  return {e_worst < 1e-3 && v_worst < 1e-3 && count == 50,
          " " + std::to_string(count) + " variations: energy rel err=" + sci(e_worst) + " volume rel err=" + sci(v_worst)};
}

// ---------------------------------------------------------------------------------------
// 4. Perturbed caps and discs on S^2_1 converge to discs or hyperbolic caps.

Outcome criterion_classification() {
  constexpr int n = 64;
  constexpr double amplitude = 0.05;
  const auto cap = SpacelikeGraph::build(
      Domain::disc(1.0, n), [](double x, double y) { return std::sqrt(1 + x * x + y * y) - std::sqrt(2.0); },
      Pseudosphere{});
  const double h = 0.5;
  const auto disc = SpacelikeGraph::build(Domain::disc(std::sqrt(1 + h * h), n), [=](double, double) { return h; },
                                          Pseudosphere{});
  bool pass = true;
  int good = 0, caps = 0, discs = 0;
  double worst_fit = 0.0, worst_res = 0.0;
  for (int seed = 0; seed < 10; ++seed) {
    SolveOptions o;
    o.seed = static_cast<std::uint64_t>(seed);
    const bool is_cap = seed % 2 == 0;
    o.lambda = is_cap ? 1.0 : -h;
    o.H_target = is_cap ? 1.0 : 0.0;
    const auto res = solve_stationary(Pseudosphere{}, o, perturb(is_cap ? cap : disc, amplitude, seed));
    const auto cls = classify(res.graph);
    const bool kind_ok = cls.kind == Classification::Kind::PlanarDisc || cls.kind == Classification::Kind::HyperbolicCap;
    const double fit = cls.rms_fit / cls.diameter;
    const bool ok = res.converged && res.report.residual < 1e-6 && kind_ok && fit < 1e-4;
    worst_fit = std::max(worst_fit, fit);
    worst_res = std::max(worst_res, res.report.residual);
    if (ok) ++good;
    if (cls.kind == Classification::Kind::HyperbolicCap) ++caps;
    if (cls.kind == Classification::Kind::PlanarDisc) ++discs;
    pass = pass && ok;
  }
  return {pass, " " + std::to_string(good) + "/10 runs ok (" + std::to_string(caps) + " caps, " +
                    std::to_string(discs) + " discs), max residual=" + sci(worst_res) +
                    " max rms_fit/diameter=" + sci(worst_fit)};
}

// ---------------------------------------------------------------------------------------
// 5. Hopf differential suite.

Outcome criterion_hopf() {
  const auto verdicts = cli::run_suite("hopf");
  int failed = 0;
  std::string detail;
  for (const auto& v : verdicts) {
    if (!v.pass) {
      ++failed;
      detail += " FAIL{" + v.check + " value=" + sci(v.value) + "}";
    }
  }
  double cap_phi = 0.0, bnd = 0.0, order = 0.0;
  for (const auto& v : verdicts) {
    if (v.check.rfind("hopf: umbilic cap max|phi|", 0) == 0) cap_phi = std::max(cap_phi, v.value);
    if (v.check.rfind("hopf: stationary cap boundary", 0) == 0) bnd = std::max(bnd, v.value);
    if (v.check == "hopf: CMC annulus holomorphicity order") order = v.value;
  }
  detail = " " + std::to_string(verdicts.size() - failed) + "/" + std::to_string(verdicts.size()) +
           " checks: cap max|phi|=" + sci(cap_phi) + " boundary max|Im z^2 phi|=" + sci(bnd) +
           " holomorphicity order=" + fmt("%.2f", order) + detail;
  return {failed == 0, detail};
}

// ---------------------------------------------------------------------------------------
// 6. Covering property of the projection onto the waist.

Outcome criterion_covering() {
  const auto family = random_spacelike_family(100, 2048, 2024);
  double norm_err = 0.0, full_err = 0.0;
  int embedded = 0, graphs = 0;
  for (const auto& c : family) {
    const auto r = check_covering(c);
    norm_err = std::max(norm_err, r.norm_identity_error);
    full_err = std::max(full_err, r.full_identity_error);
    if (r.embedded) {
      ++embedded;
      if (r.graph_on_waist && std::abs(r.winding) == 1) ++graphs;
    }
  }
  const auto null_curve = SampledCurve::geodesic_graph([](double s) { return std::sin(s); }, 2048);
  const auto nr = check_covering(null_curve);
  const bool null_ok = !nr.spacelike && nr.failure_sample.has_value();
  const bool pass = norm_err < 1e-8 && embedded == 100 && graphs == embedded && null_ok;
  return {pass, " norm identity max rel err=" + sci(norm_err) + " (tol 1e-8; with the <alpha',a>^2 term: " +
                    sci(full_err) + ") embedded=" + std::to_string(embedded) + " winding+-1 graphs=" +
                    std::to_string(graphs) + " null control " +
                    (null_ok ? "rejected at sample " + std::to_string(*nr.failure_sample) : std::string("NOT rejected"))};
}

// ---------------------------------------------------------------------------------------
// 7. One-side theorems on solver output.

Outcome criterion_one_side() {
  const SpacelikePlane P{};
  const HyperbolicPlane Hn{{0, 0, 0}, 1.0, Branch::Upper};
  int runs = 0, converged = 0, ok = 0;
  double contained = 0.0;
  std::string bad;
  auto tally = [&](const SolveResult& res, const OneSideReport& rep, bool expect_contained, const std::string& tag) {
    ++runs;
    if (!res.converged) return;
    ++converged;
    const bool good = expect_contained ? rep.side == Side::Contained : (rep.side == Side::Above || rep.side == Side::Below);
    if (expect_contained) contained = std::max(contained, std::max(-rep.min_value, rep.max_value));
    if (good) {
      ++ok;
    } else {
      bad += " " + tag + ":" + to_string(rep.side);
    }
  };

  // Plane support, H = +1 and H = -1 caps.
  const double rb = std::sqrt(0.69);
  for (double sgn : {1.0, -1.0}) {
    const auto init = SpacelikeGraph::build(
        Domain::disc(rb, 32), [=](double x, double y) { return sgn * (std::sqrt(1 + x * x + y * y) - 1.3); }, P);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      SolveOptions o;
      o.lambda = -1.3;
      o.H_target = sgn;
      const auto res = solve_stationary(P, o, perturb(init, 0.02, seed));
      tally(res, check_one_side_plane(res.graph, P), false, "plane H=" + fmt("%+.0f", sgn));
    }
  }
  // Plane support, H = 0.
  {
    const auto init = SpacelikeGraph::build(Domain::disc(1.0, 32), [](double, double) { return 0.0; }, P);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      SolveOptions o;
      o.lambda = -1.0;
      o.H_target = 0.0;
      const auto res = solve_stationary(P, o, perturb(init, 0.02, seed));
      tally(res, check_one_side_plane(res.graph, P), true, "plane H=0");
    }
  }
  // Hyperbolic support H^2(O,1): H = 1/0.3 and H = 2 (lambda = -1.2).
  struct Hyp {
    double r, p3;
    int max_iters;
  };
  for (const Hyp hc : {Hyp{0.3, 0.6, 100}, Hyp{0.5, std::sqrt(0.05), 150}}) {
    const double x3 = (1.0 + hc.p3 * hc.p3 - hc.r * hc.r) / (2.0 * hc.p3);
    const double rbh = std::sqrt(x3 * x3 - 1.0);
    const double lambda = (-1.0 - hc.r * hc.r + hc.p3 * hc.p3) / (2.0 * hc.r);
    const auto init = SpacelikeGraph::build(
        Domain::disc(rbh, 32), [=](double x, double y) { return hc.p3 + std::sqrt(hc.r * hc.r + x * x + y * y); }, Hn);
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
      SolveOptions o;
      o.lambda = lambda;
      o.H_target = 1.0 / hc.r;
      o.max_iters = hc.max_iters;
      const auto res = solve_stationary(Hn, o, perturb(init, 0.01, seed));
      tally(res, check_one_side_hyperbolic(res.graph, Hn), false, "hyperbolic H=" + fmt("%.2f", 1.0 / hc.r));
    }
  }
  const bool pass = converged > 0 && ok == converged;
  return {pass, " " + std::to_string(ok) + "/" + std::to_string(converged) + " converged solves one-sided (" +
                    std::to_string(runs - converged) + " of " + std::to_string(runs) +
                    " did not converge), H=0 max|height|=" + sci(contained) + bad};
}

// ---------------------------------------------------------------------------------------
// 8. Wetted area of horizontal sections.

Outcome criterion_wetted() {
  bool pass = true;
  std::string detail;
  for (double h : {0.1, 0.5, 1.0}) {
    const auto g = SpacelikeGraph::build(Domain::disc(std::sqrt(1 + h * h), 32), [=](double, double) { return h; },
                                         Pseudosphere{});
    const double W = wetted_area(g, Pseudosphere{});
    const double err = std::abs(W / (2.0 * std::numbers::pi * h) - 1.0);
    pass = pass && err < 1e-6;
    detail += " h=" + fmt("%.1f", h) + ": rel err=" + sci(err);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------------------
// 9. Byte-identical solve outputs.

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome criterion_determinism() {
  const auto base = std::filesystem::temp_directory_path() / "lcap_acceptance_determinism";
  std::filesystem::remove_all(base);
  cli::SolveConfig cfg;
  cfg.amplitude = 0.05;
  cfg.seed = 7;
  cfg.res = 24;
  cfg.name = "det";
  std::ostringstream sink;
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    cli::Output out;
    out.dir = base / ("run" + std::to_string(i));
    out.log = &sink;
    codes[i] = cli::cmd_solve(cfg, out);
  }
  bool same = true;
  std::size_t bytes = 0;
  for (const char* f : {"det_trace.csv", "det.obj", "det_report.csv", "det_summary.txt"}) {
    const auto a = slurp(base / "run0" / f);
    const auto b = slurp(base / "run1" / f);
    same = same && !a.empty() && a == b;
    if (std::string(f) == "det_trace.csv") bytes = a.size();
  }
  std::filesystem::remove_all(base);
  return {same && codes[0] == 0 && codes[1] == 0,
          " two solves (seed 7): exit " + std::to_string(codes[0]) + "/" + std::to_string(codes[1]) + ", trace " +
              std::to_string(bytes) + " bytes, outputs " + (same ? "identical" : "DIFFER")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double time_limit;
  };
  constexpr double kNoLimit = 1e30;
  const std::vector<Criterion> criteria{
      {1, "umbilical curvature oracle", criterion_umbilic, 10.0},
      {2, "contact-angle oracle", criterion_contact_angle, kNoLimit},
      {3, "first-variation gradient check", criterion_gradients, 30.0},
      {4, "perturbed caps/discs classify as discs or hyperbolic caps", criterion_classification, 300.0},
      {5, "Hopf differential suite", criterion_hopf, kNoLimit},
      {6, "covering property", criterion_covering, kNoLimit},
      {7, "one-side theorems", criterion_one_side, kNoLimit},
      {8, "wetted-area formula", criterion_wetted, kNoLimit},
      {9, "determinism", criterion_determinism, kNoLimit},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string(" exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > c.time_limit) {
      o.pass = false;
      o.detail += " over the " + fmt("%.0f", c.time_limit) + "s budget";
    }
    if (!o.pass) ++failed;
    std::printf("criterion %d %s %s:%s [%.1fs]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), dt);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
