#include "lcap/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "lcap/flow.hpp"
#include "lcap/hopf.hpp"
#include "lcap/variational.hpp"

namespace lcap::cli {

namespace {

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v == 0.0 ? 0.0 : v);  // no "-0"
  return std::string(buf, res.ptr);
}

std::string num(std::int64_t v) { return std::to_string(v); }

std::string csv_row(std::initializer_list<double> vals) {
  std::string s;
  for (double v : vals) {
    if (!s.empty()) s += ',';
    s += num(v);
  }
  return s;
}

std::map<std::string, std::string> key_values(std::istringstream& in) {
  std::map<std::string, std::string> kv;
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error("mesh file: malformed metadata token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

std::string one_line(const std::string& multiline) {
  std::string s = multiline;
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::string vertex_table(const SpacelikeGraph& g) {
  const auto H = mean_curvature(g);
  std::string out = "id,x,y,z,boundary,H\n";
  const auto pos = g.positions();
  for (std::size_t v = 0; v < pos.size(); ++v) {
    const bool b = g.is_boundary(static_cast<int>(v));
    out += std::to_string(v) + ',' + csv_row({pos[v].x, pos[v].y, pos[v].z}) + ',' + (b ? "1" : "0") + ',' +
           (b ? std::string("nan") : num(H[v])) + '\n';
  }
  return out;
}

// Ring-averaged heights of a polar mesh.
std::string radial_profile(const SpacelikeGraph& g) {
  const Domain& d = g.domain();
  const auto pos = g.positions();
  std::string out = "ring,rho,z_mean,z_min,z_max\n";
  for (int j = 0; j <= d.rings; ++j) {
    const int count = (d.kind == Domain::Kind::Disc && j == 0) ? 1 : d.sectors;
    double sum = 0.0, lo = INFINITY, hi = -INFINITY;
    for (int k = 0; k < count; ++k) {
      const double z = pos[d.index(j, k)].z;
      sum += z;
      lo = std::min(lo, z);
      hi = std::max(hi, z);
    }
    out += std::to_string(j) + ',' + csv_row({d.ring_radius(j), sum / count, lo, hi}) + '\n';
  }
  return out;
}

// Analytic cap H^2_+(p + c a, r) or horizontal disc meeting a centered support.
SpacelikeGraph analytic_start(const SolveConfig& cfg, const SupportSurface& s) {
  auto kind = kind_name(s);
  Vec3 p;
  double R = 1.0;
  std::visit([&](const auto& sup) {
    using T = std::decay_t<decltype(sup)>;
    p = sup.p;
    if constexpr (!std::is_same_v<T, SpacelikePlane>) R = sup.r;
  }, s);
  if (const auto* pl = std::get_if<SpacelikePlane>(&s)) {
    if (std::abs(pl->v.x) > 1e-14 || std::abs(pl->v.y) > 1e-14)
      throw Error("solve: analytic initial surfaces need a horizontal plane support");
  }
  if (const auto* hp = std::get_if<HyperbolicPlane>(&s)) {
    if (hp->branch != Branch::Upper) throw Error("solve: analytic initial surfaces need the upper branch");
  }

  if (cfg.init == "cap") {
    const double c = cfg.init_c;
    const double r = cfg.init_r;
    double x3 = 0.0;  // boundary height relative to p
    double rho2 = 0.0;
    if (kind == "pseudosphere") {
      if (c == 0.0) throw Error("solve: cap center must be off the support center");
      x3 = (c * c - r * r - R * R) / (2.0 * c);
      rho2 = R * R + x3 * x3;
    } else if (kind == "hyperbolic") {
      if (c == 0.0) throw Error("solve: cap center must be off the support center");
      x3 = (R * R + c * c - r * r) / (2.0 * c);
      rho2 = x3 * x3 - R * R;
    } else {
      x3 = 0.0;
      rho2 = c * c - r * r;
    }
    if (!(rho2 > 0.0) || !(x3 > c)) throw Error("solve: the requested cap does not meet the support on its upper branch");
    const Domain d = Domain::disc(std::sqrt(rho2), cfg.res, p.x, p.y);
    return SpacelikeGraph::build(
        d,
        [=](double x, double y) {
          const double dx = x - p.x, dy = y - p.y;
          return p.z + c + std::sqrt(r * r + dx * dx + dy * dy);
        },
        s);
  }
  const double h = cfg.init == "waist-disc" ? 0.0 : cfg.init_h;
  double rho2 = 0.0;
  if (kind == "pseudosphere") {
    rho2 = R * R + h * h;
  } else if (kind == "hyperbolic") {
    rho2 = h * h - R * R;
    if (!(h > 0.0)) throw Error("solve: disc height must be positive on an upper hyperbolic plane");
  } else {
    if (h != 0.0) throw Error("solve: a disc on a plane support sits at the plane height (init-h = 0)");
    rho2 = cfg.init_radius * cfg.init_radius;
  }
  if (!(rho2 > 0.0)) throw Error("solve: the requested disc does not meet the support");
  return SpacelikeGraph::build(Domain::disc(std::sqrt(rho2), cfg.res, p.x, p.y),
                               [=](double, double) { return p.z + h; }, s);
}

void append_double(Echo& e, const std::string& k, double v) { e.emplace_back(k, num(v)); }

}  // namespace

// --- plumbing --------------------------------------------------------------------------------

std::string echo_header(const std::string& command, const Echo& echo) {
  std::string s = "# lcap " + command + "\n";
  for (const auto& [k, v] : echo) s += "# " + k + " = " + v + "\n";
  return s;
}

Output Output::resolve(const std::optional<std::string>& flag, std::ostream& log) {
  Output o;
  o.log = &log;
  if (flag && !flag->empty()) {
    o.dir = *flag;
  } else if (const char* env = std::getenv("LCAP_OUTPUT_DIR"); env && *env) {
    o.dir = env;
  }
  return o;
}

std::filesystem::path Output::file(const std::string& name) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir / name;
}

std::ostream& Output::out() const { return log ? *log : std::cout; }

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  f << text;
  if (!f) throw Error("write failed for " + p.string());
}

std::string obj_text(const SpacelikeGraph& g, const std::string& header) {
  const Domain& d = g.domain();
  std::string s = header;
  s += "#@ domain kind=" + std::string(d.kind == Domain::Kind::Disc ? "disc" : "annulus") + " r_in=" + num(d.r_in) +
       " r_out=" + num(d.r_out) + " rings=" + std::to_string(d.rings) + " sectors=" + std::to_string(d.sectors) +
       " cx=" + num(d.cx) + " cy=" + num(d.cy) + "\n";
  if (g.support()) s += "#@ support " + one_line(to_config(*g.support())) + "\n";
  for (const auto& x : g.positions()) s += "v " + num(x.x) + ' ' + num(x.y) + ' ' + num(x.z) + '\n';
  for (const auto& t : g.triangles())
    s += "f " + std::to_string(t[0] + 1) + ' ' + std::to_string(t[1] + 1) + ' ' + std::to_string(t[2] + 1) + '\n';
  return s;
}

SpacelikeGraph read_obj(const std::filesystem::path& p) {
  std::ifstream f(p);
  if (!f) throw Error("cannot read " + p.string());
  std::optional<Domain> domain;
  std::optional<SupportSurface> support;
  std::vector<Vec3> pos;
  std::string line;
  while (std::getline(f, line)) {
    if (line.rfind("#@ domain", 0) == 0) {
      std::istringstream in(line.substr(9));
      const auto kv = key_values(in);
      Domain d;
      d.kind = kv.at("kind") == "annulus" ? Domain::Kind::Annulus : Domain::Kind::Disc;
      d.r_in = std::stod(kv.at("r_in"));
      d.r_out = std::stod(kv.at("r_out"));
      d.rings = std::stoi(kv.at("rings"));
      d.sectors = std::stoi(kv.at("sectors"));
      d.cx = std::stod(kv.at("cx"));
      d.cy = std::stod(kv.at("cy"));
      domain = d;
    } else if (line.rfind("#@ support", 0) == 0) {
      std::istringstream in(line.substr(10));
      support = support_from_config(key_values(in));
    } else if (line.rfind("v ", 0) == 0) {
      std::istringstream in(line.substr(2));
      Vec3 x;
      if (!(in >> x.x >> x.y >> x.z)) throw Error("mesh file: malformed vertex line");
      pos.push_back(x);
    }
  }
  if (!domain) throw Error("mesh file " + p.string() + " lacks the '#@ domain' line");
  auto topo = make_topology(*domain);
  if (static_cast<int>(pos.size()) != domain->vertex_count())
    throw Error("mesh file: vertex count does not match the domain");
  return SpacelikeGraph::from_positions(std::move(topo), std::move(pos), support);
}

// --- configs --------------------------------------------------------------------------------

SupportSurface SupportOptions::build() const {
  std::map<std::string, std::string> kv{
      {"kind", kind}, {"center", center}, {"radius", num(radius)}, {"normal", normal}, {"branch", branch}};
  return support_from_config(kv);
}

void SupportOptions::append(Echo& e) const {
  e.emplace_back("support", kind);
  e.emplace_back("support-center", center);
  append_double(e, "support-radius", radius);
  e.emplace_back("support-normal", normal);
  e.emplace_back("support-branch", branch);
}

Echo GenConfig::echo() const {
  Echo e{{"surface", surface}};
  append_double(e, "r", r);
  append_double(e, "c", c);
  append_double(e, "height", h);
  append_double(e, "H", H);
  append_double(e, "c-int", c_int);
  append_double(e, "rho0", rho0);
  append_double(e, "rho1", rho1);
  e.emplace_back("res", num(std::int64_t{res}));
  e.emplace_back("name", name);
  return e;
}

Echo SolveConfig::echo() const {
  Echo e;
  support.append(e);
  append_double(e, "lambda", lambda);
  e.emplace_back("H", H ? num(*H) : "none");
  e.emplace_back("volume", volume ? num(*volume) : "none");
  e.emplace_back("init", init);
  append_double(e, "init-r", init_r);
  append_double(e, "init-c", init_c);
  append_double(e, "init-h", init_h);
  append_double(e, "init-radius", init_radius);
  e.emplace_back("init-file", init_file);
  append_double(e, "amplitude", amplitude);
  e.emplace_back("seed", std::to_string(seed));
  e.emplace_back("res", num(std::int64_t{res}));
  e.emplace_back("max-iters", num(std::int64_t{max_iters}));
  append_double(e, "tol", tol);
  append_double(e, "step0", step0);
  e.emplace_back("name", name);
  return e;
}

Echo VerifyConfig::echo() const { return {{"suite", suite}, {"name", name}}; }

Echo HopfConfig::echo() const {
  Echo e{{"surface", surface}};
  append_double(e, "r", r);
  append_double(e, "c", c);
  append_double(e, "H", H);
  append_double(e, "c-int", c_int);
  append_double(e, "rho0", rho0);
  append_double(e, "rho1", rho1);
  e.emplace_back("rings", num(std::int64_t{rings}));
  e.emplace_back("sectors", num(std::int64_t{sectors}));
  e.emplace_back("name", name);
  return e;
}

Echo ExportConfig::echo() const { return {{"input", input}, {"format", format}, {"name", name}}; }
Echo ReportConfig::echo() const { return {{"input", input}, {"name", name}}; }

// --- commands -------------------------------------------------------------------------------

int cmd_gen(const GenConfig& cfg, const Output& out) {
  if (cfg.res < 8) throw Error("gen: res must be at least 8");
  const std::string header = echo_header("gen", cfg.echo());
  std::ostream& log = out.out();
  log << header;
  std::optional<SpacelikeGraph> g;
  std::optional<double> exact_area, exact_volume;
  if (cfg.surface == "cap") {
    const double x3b = cap_boundary_height(cfg.c, cfg.r);
    if (!(x3b > cfg.c)) throw Error("gen: the cap does not meet S^2_1 on its upper branch");
    const double rb2 = 1.0 + x3b * x3b;
    const double r = cfg.r, c = cfg.c;
    g = SpacelikeGraph::build(Domain::disc(std::sqrt(rb2), cfg.res),
                              [=](double x, double y) { return c + std::sqrt(r * r + x * x + y * y); }, Pseudosphere{});
    exact_area = 2.0 * std::numbers::pi * r * (std::sqrt(r * r + rb2) - r);
    exact_volume = std::numbers::pi * c * rb2 + 2.0 * std::numbers::pi / 3.0 * (std::pow(r * r + rb2, 1.5) - r * r * r);
  } else if (cfg.surface == "disc") {
    const double h = cfg.h;
    g = SpacelikeGraph::build(Domain::disc(std::sqrt(1.0 + h * h), cfg.res), [=](double, double) { return h; },
                              Pseudosphere{});
    exact_area = std::numbers::pi * (1.0 + h * h);
    exact_volume = std::numbers::pi * h * (1.0 + h * h);
  } else if (cfg.surface == "rotprofile") {
    g = revolve(RotationalProfile(cfg.H, cfg.c_int, cfg.rho0, cfg.rho1), cfg.res);
  } else {
    throw Error("gen: unknown surface '" + cfg.surface + "'");
  }
  write_text(out.file(cfg.name + ".obj"), obj_text(*g, header));
  write_text(out.file(cfg.name + ".csv"), header + vertex_table(*g));
  const double A = area(*g);
  const double V = algebraic_volume(*g);
  log << "vertices=" << g->vertex_count() << " triangles=" << g->triangles().size() << "\n";
  log << "area=" << num(A);
  if (exact_area) log << " closed_form=" << num(*exact_area) << " rel_error=" << num(std::abs(A / *exact_area - 1.0));
  log << "\nalgebraic_volume=" << num(V);
  if (exact_volume) log << " closed_form=" << num(*exact_volume);
  log << "\n";
  return kExitOk;
}

int cmd_solve(const SolveConfig& cfg, const Output& out) {
  if (cfg.res < 8) throw Error("solve: res must be at least 8");
  if (cfg.H && cfg.volume) throw Error("solve: give either H or volume, not both");
  const SupportSurface s = cfg.support.build();
  check_admissible_lambda(s, cfg.lambda);
  const std::string header = echo_header("solve", cfg.echo());
  std::ostream& log = out.out();
  log << header;

  SpacelikeGraph start = cfg.init == "file" ? read_obj(cfg.init_file).with_support(s) : analytic_start(cfg, s);
  SolveOptions o;
  o.lambda = cfg.lambda;
  o.max_iters = cfg.max_iters;
  o.residual_tol = cfg.tol;
  o.step0 = cfg.step0;
  o.seed = cfg.seed;
  if (cfg.H) {
    o.H_target = *cfg.H;
  } else {
    o.volume_target = cfg.volume ? *cfg.volume : enclosed_volume(start, s);
  }
  if (cfg.amplitude > 0.0) start = perturb(start, cfg.amplitude, cfg.seed);

  const SolveResult res = solve_stationary(s, o, start);
  const Classification cls = classify(res.graph);
  write_text(out.file(cfg.name + ".obj"), obj_text(res.graph, header));
  write_text(out.file(cfg.name + "_trace.csv"), header + trace_csv(res.trace));
  write_text(out.file(cfg.name + "_report.csv"), header + report_csv(res.report));

  std::ostringstream sum;
  sum << "converged=" << (res.converged ? 1 : 0) << "\n"
      << "iterations=" << res.iterations << "\n"
      << "residual=" << num(res.report.residual) << "\n"
      << "multiplier=" << num(res.multiplier) << "\n"
      << report_summary(res.report) << "\n"
      << "classification=" << to_string(cls.kind) << "\n"
      << "rms_fit=" << num(cls.rms_fit) << "\n"
      << "diameter=" << num(cls.diameter) << "\n";
  if (cls.kind == Classification::Kind::HyperbolicCap)
    sum << "center=" << num(cls.p.x) << ',' << num(cls.p.y) << ',' << num(cls.p.z) << "\nradius=" << num(cls.r) << "\n";
  if (cls.kind == Classification::Kind::PlanarDisc)
    sum << "plane=" << num(cls.plane_a) << ',' << num(cls.plane_b) << ',' << num(cls.plane_c) << "\n";
  write_text(out.file(cfg.name + "_summary.txt"), header + sum.str());
  log << sum.str();
  return res.converged ? kExitOk : kExitNotConverged;
}

int cmd_verify(const VerifyConfig& cfg, const Output& out) {
  const auto names = suite_names();
  if (cfg.suite != "all" && std::find(names.begin(), names.end(), cfg.suite) == names.end())
    throw Error("verify: unknown suite '" + cfg.suite + "'");
  const std::string header = echo_header("verify", cfg.echo());
  std::ostream& log = out.out();
  log << header;
  const auto verdicts = run_suite(cfg.suite);
  std::string text;
  int failed = 0;
  for (const auto& v : verdicts) {
    text += format_verdict(v) + "\n";
    if (!v.pass) ++failed;
  }
  text += "summary: " + std::to_string(verdicts.size() - failed) + "/" + std::to_string(verdicts.size()) + " passed\n";
  write_text(out.file(cfg.name + "_" + cfg.suite + ".txt"), header + text);
  log << text;
  return failed == 0 ? kExitOk : kExitError;
}

int cmd_hopf(const HopfConfig& cfg, const Output& out) {
  const std::string header = echo_header("hopf", cfg.echo());
  std::ostream& log = out.out();
  log << header;
  std::optional<RotationalProfile> prof;
  double u_offset = 0.0;
  std::optional<double> exact_area;
  if (cfg.surface == "cap") {
    const double x3b = cap_boundary_height(cfg.c, cfg.r);
    if (!(x3b > cfg.c)) throw Error("hopf: the cap does not meet S^2_1 on its upper branch");
    const double rb2 = 1.0 + x3b * x3b;
    prof.emplace(1.0 / cfg.r, 0.0, 0.0, std::sqrt(rb2));
    u_offset = cfg.c + cfg.r;
    exact_area = 2.0 * std::numbers::pi * cfg.r * (std::sqrt(cfg.r * cfg.r + rb2) - cfg.r);
  } else if (cfg.surface == "rotprofile") {
    prof.emplace(cfg.H, cfg.c_int, cfg.rho0, cfg.rho1);
  } else {
    throw Error("hopf: unknown surface '" + cfg.surface + "'");
  }
  const ConformalPatch patch = conformal_parametrize_rotational(*prof, cfg.rings, cfg.sectors, u_offset);
  const HopfField f = hopf_differential(patch);
  const auto bnd = boundary_imz2phi(f);
  double bmax = 0.0;
  for (double v : bnd) bmax = std::max(bmax, std::abs(v));
  const auto um = umbilicity_diagnostic(f);
  write_text(out.file(cfg.name + ".csv"), header + hopf_csv(f));
  log << "max_abs_phi=" << num(f.max_abs()) << "\n"
      << "min_abs_phi_interior=" << num(f.min_abs_interior()) << "\n"
      << "holomorphicity_residual=" << num(holomorphicity_residual(f)) << "\n"
      << "boundary_max_abs_im_z2phi=" << num(bmax) << "\n"
      << "conformality_residual=" << num(conformality_residual(patch)) << "\n"
      << "umbilicity_derived_error=" << num(um.derived_error) << "\n"
      << "umbilicity_alt_error=" << num(um.alt_error) << "\n"
      << "area=" << num(patch_area(patch));
  if (exact_area) log << " closed_form=" << num(*exact_area);
  log << "\n";
  return kExitOk;
}

int cmd_export(const ExportConfig& cfg, const Output& out) {
  if (cfg.input.empty()) throw Error("export: --input is required");
  const std::string header = echo_header("export", cfg.echo());
  const SpacelikeGraph g = read_obj(cfg.input);
  std::filesystem::path target;
  if (cfg.format == "csv") {
    target = out.file(cfg.name + ".csv");
    write_text(target, header + vertex_table(g));
  } else if (cfg.format == "obj") {
    target = out.file(cfg.name + ".obj");
    write_text(target, obj_text(g, header));
  } else if (cfg.format == "profile") {
    target = out.file(cfg.name + "_profile.csv");
    write_text(target, header + radial_profile(g));
  } else {
    throw Error("export: unknown format '" + cfg.format + "'");
  }
  out.out() << header << "wrote " << target.string() << "\n";
  return kExitOk;
}

int cmd_report(const ReportConfig& cfg, const Output& out) {
  if (cfg.input.empty()) throw Error("report: --input is required");
  const std::string header = echo_header("report", cfg.echo());
  std::ostream& log = out.out();
  log << header;
  const SpacelikeGraph g = read_obj(cfg.input);
  std::ostringstream sum;
  sum << "vertices=" << g.vertex_count() << "\n"
      << "area=" << num(area(g)) << "\n"
      << "algebraic_volume=" << num(algebraic_volume(g)) << "\n"
      << "max_slope=" << num(g.max_slope()) << "\n";
  if (g.support()) {
    const auto& s = *g.support();
    const auto rep = stationarity_report(g, s);
    write_text(out.file(cfg.name + "_report.csv"), header + report_csv(rep));
    sum << "support=" << kind_name(s) << "\n"
        << "wetted_area=" << num(wetted_area(g, s)) << "\n"
        << "enclosed_volume=" << num(enclosed_volume(g, s)) << "\n"
        << report_summary(rep) << "\n";
  }
  const auto cls = classify(g);
  sum << "classification=" << to_string(cls.kind) << "\n"
      << "rms_fit=" << num(cls.rms_fit) << "\n"
      << "diameter=" << num(cls.diameter) << "\n";
  write_text(out.file(cfg.name + "_summary.txt"), header + sum.str());
  log << sum.str();
  return kExitOk;
}

// --- argument parsing ---------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"Spacelike free-boundary surfaces in L^3: generation, solves and checks"};
  app.set_config("--config", "", "Read options from an INI or TOML file ([gen], [solve], ... sections)");
  std::string out_dir;
  app.add_option("--out-dir", out_dir, "Output directory (default: $LCAP_OUTPUT_DIR or .)");
  app.require_subcommand(1, 1);

  GenConfig gen;
  auto* g = app.add_subcommand("gen", "Generate an analytic surface mesh");
  g->add_option("--surface", gen.surface)->check(CLI::IsMember({"cap", "disc", "rotprofile"}));
  g->add_option("--r", gen.r, "Cap radius");
  g->add_option("--c", gen.c, "Cap center height");
  g->add_option("--height", gen.h, "Disc height");
  g->add_option("--H", gen.H, "Profile mean curvature");
  g->add_option("--c-int", gen.c_int, "Profile first integral");
  g->add_option("--rho0", gen.rho0);
  g->add_option("--rho1", gen.rho1);
  g->add_option("--res", gen.res)->check(CLI::Range(8, 4096));
  g->add_option("--name", gen.name);

  SolveConfig sol;
  double H_value = 0.0, V_value = 0.0;
  auto* s = app.add_subcommand("solve", "Run the constrained stationary solver");
  s->add_option("--support", sol.support.kind)->check(CLI::IsMember({"pseudosphere", "plane", "hyperbolic"}));
  s->add_option("--support-center", sol.support.center);
  s->add_option("--support-radius", sol.support.radius);
  s->add_option("--support-normal", sol.support.normal);
  s->add_option("--support-branch", sol.support.branch)->check(CLI::IsMember({"upper", "lower"}));
  s->add_option("--lambda", sol.lambda);
  auto* H_opt = s->add_option("--H", H_value, "Target mean curvature");
  auto* V_opt = s->add_option("--volume", V_value, "Target enclosed volume (default: initial volume)");
  s->add_option("--init", sol.init)->check(CLI::IsMember({"cap", "disc", "waist-disc", "file"}));
  s->add_option("--init-r", sol.init_r);
  s->add_option("--init-c", sol.init_c);
  s->add_option("--init-h", sol.init_h);
  s->add_option("--init-radius", sol.init_radius);
  s->add_option("--init-file", sol.init_file);
  s->add_option("--amplitude", sol.amplitude, "Perturbation amplitude of the initial surface");
  s->add_option("--seed", sol.seed);
  s->add_option("--res", sol.res)->check(CLI::Range(8, 4096));
  s->add_option("--max-iters", sol.max_iters);
  s->add_option("--tol", sol.tol);
  s->add_option("--step0", sol.step0);
  s->add_option("--name", sol.name);

  VerifyConfig ver;
  auto* v = app.add_subcommand("verify", "Run a verification suite");
  std::vector<std::string> allowed = suite_names();
  allowed.push_back("all");
  v->add_option("suite", ver.suite, "covering | one-side | hopf | gradients | all")->check(CLI::IsMember(allowed));
  v->add_option("--name", ver.name);

  HopfConfig hop;
  auto* h = app.add_subcommand("hopf", "Hopf differential of a rotational patch in conformal coordinates");
  h->add_option("--surface", hop.surface)->check(CLI::IsMember({"cap", "rotprofile"}));
  h->add_option("--r", hop.r);
  h->add_option("--c", hop.c);
  h->add_option("--H", hop.H);
  h->add_option("--c-int", hop.c_int);
  h->add_option("--rho0", hop.rho0);
  h->add_option("--rho1", hop.rho1);
  h->add_option("--rings", hop.rings);
  h->add_option("--sectors", hop.sectors);
  h->add_option("--name", hop.name);

  ExportConfig exp;
  auto* e = app.add_subcommand("export", "Convert a mesh file");
  e->add_option("--input", exp.input)->required();
  e->add_option("--format", exp.format)->check(CLI::IsMember({"csv", "obj", "profile"}));
  e->add_option("--name", exp.name);

  ReportConfig rep;
  auto* r = app.add_subcommand("report", "Stationarity report and classification of a mesh file");
  r->add_option("--input", rep.input)->required();
  r->add_option("--name", rep.name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, log, err) == 0 ? kExitOk : kExitError;
  }
  if (H_opt->count() > 0) sol.H = H_value;
  if (V_opt->count() > 0) sol.volume = V_value;

  try {
    const Output out = Output::resolve(out_dir.empty() ? std::nullopt : std::optional(out_dir), log);
    if (g->parsed()) return cmd_gen(gen, out);
    if (s->parsed()) return cmd_solve(sol, out);
    if (v->parsed()) return cmd_verify(ver, out);
    if (h->parsed()) return cmd_hopf(hop, out);
    if (e->parsed()) return cmd_export(exp, out);
    if (r->parsed()) return cmd_report(rep, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace lcap::cli
