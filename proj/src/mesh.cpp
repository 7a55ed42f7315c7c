#include "lcap/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lcap {

using kernels::Exec;
using kernels::Tri;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// First-derivative weights of the 8th-order central stencil.
constexpr double kD8[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
constexpr double kD4[2] = {2.0 / 3.0, -1.0 / 12.0};

double periodic_derivative(std::span<const double> f, std::size_t k, double h) {
  const std::size_t n = f.size();
  auto at = [&](long off) { return f[(k + n + static_cast<std::size_t>(off + static_cast<long>(n))) % n]; };
  if (n >= 9) {
    double s = 0.0;
    for (int m = 1; m <= 4; ++m) s += kD8[m - 1] * (at(m) - at(-m));
    return s / h;
  }
  double s = 0.0;
  for (int m = 1; m <= 2; ++m) s += kD4[m - 1] * (at(m) - at(-m));
  return s / h;
}

// d/dx of the Lagrange interpolant through (x_m, f_m), evaluated at x0.
double lagrange_derivative(std::span<const double> x, std::span<const double> f, double x0) {
  const std::size_t n = x.size();
  double total = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    double denom = 1.0;
    for (std::size_t p = 0; p < n; ++p)
      if (p != m) denom *= x[m] - x[p];
    double numer = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == m) continue;
      double prod = 1.0;
      for (std::size_t p = 0; p < n; ++p)
        if (p != m && p != l) prod *= x0 - x[p];
      numer += prod;
    }
    total += f[m] * numer / denom;
  }
  return total;
}

Vec3 graph_normal(double gx, double gy) {
  const double w = std::sqrt(1.0 - gx * gx - gy * gy);
  return Vec3{gx, gy, 1.0} * (1.0 / w);
}

}  // namespace

// --- Domain ----------------------------------------------------------------

Domain Domain::disc(double radius, int resolution, double cx, double cy) {
  Domain d;
  d.kind = Kind::Disc;
  d.r_out = radius;
  d.rings = resolution;
  d.sectors = 2 * resolution;
  d.cx = cx;
  d.cy = cy;
  d.validate();
  return d;
}

Domain Domain::annulus(double r_in, double r_out, int resolution, double cx, double cy) {
  Domain d;
  d.kind = Kind::Annulus;
  d.r_in = r_in;
  d.r_out = r_out;
  d.rings = resolution;
  d.sectors = 2 * resolution;
  d.cx = cx;
  d.cy = cy;
  d.validate();
  return d;
}

void Domain::validate() const {
  if (rings < 1 || sectors < 3) throw Error("Domain: need at least 1 ring and 3 sectors");
  if (!(r_out > 0.0)) throw Error("Domain: outer radius must be positive");
  if (kind == Kind::Annulus && !(r_in > 0.0 && r_in < r_out))
    throw Error("Domain: annulus needs 0 < r_in < r_out");
}

int Domain::vertex_count() const {
  return kind == Kind::Disc ? 1 + rings * sectors : (rings + 1) * sectors;
}

int Domain::index(int ring, int sector) const {
  sector = ((sector % sectors) + sectors) % sectors;
  if (kind == Kind::Disc) return ring == 0 ? 0 : 1 + (ring - 1) * sectors + sector;
  return ring * sectors + sector;
}

double Domain::ring_radius(int ring) const {
  if (kind == Kind::Disc) return r_out * ring / rings;
  return r_in + (r_out - r_in) * ring / rings;
}

double Domain::sector_angle(int sector) const { return kTwoPi * sector / sectors; }

std::shared_ptr<const Topology> make_topology(const Domain& d) {
  d.validate();
  auto topo = std::make_shared<Topology>();
  topo->domain = d;
  const int K = d.sectors;
  const bool disc = d.kind == Domain::Kind::Disc;
  if (disc)
    for (int k = 0; k < K; ++k) topo->tris.push_back({0, d.index(1, k), d.index(1, k + 1)});
  for (int j = disc ? 2 : 1; j <= d.rings; ++j) {
    for (int k = 0; k < K; ++k) {
      const int i0 = d.index(j - 1, k), i1 = d.index(j - 1, k + 1);
      const int o0 = d.index(j, k), o1 = d.index(j, k + 1);
      topo->tris.push_back({i0, o0, o1});
      topo->tris.push_back({i0, o1, i1});
    }
  }
  std::vector<int> outer(K);
  for (int k = 0; k < K; ++k) outer[k] = d.index(d.rings, k);
  topo->loops.push_back(outer);
  if (d.kind == Domain::Kind::Annulus) {
    std::vector<int> inner(K);
    for (int k = 0; k < K; ++k) inner[k] = d.index(0, K - 1 - k);
    topo->loops.push_back(inner);
  }
  topo->on_boundary.assign(static_cast<std::size_t>(d.vertex_count()), 0);
  for (const auto& loop : topo->loops)
    for (int v : loop) topo->on_boundary[v] = 1;
  for (int v = 0; v < d.vertex_count(); ++v)
    if (!topo->on_boundary[v]) topo->interior.push_back(v);
  return topo;
}

// --- SpacelikeGraph --------------------------------------------------------

SpacelikeGraph SpacelikeGraph::build(const Domain& d, const HeightFn& height, std::optional<SupportSurface> support,
                                     double delta_space) {
  auto topo = make_topology(d);
  std::vector<Vec3> pos(static_cast<std::size_t>(d.vertex_count()));
  const int first_ring = d.kind == Domain::Kind::Disc ? 1 : 0;
  if (d.kind == Domain::Kind::Disc) pos[0] = {d.cx, d.cy, height(d.cx, d.cy)};
  for (int j = first_ring; j <= d.rings; ++j) {
    const double r = d.ring_radius(j);
    for (int k = 0; k < d.sectors; ++k) {
      const double phi = d.sector_angle(k);
      const double x = d.cx + r * std::cos(phi);
      const double y = d.cy + r * std::sin(phi);
      pos[d.index(j, k)] = {x, y, height(x, y)};
    }
  }
  for (const Vec3& p : pos)
    if (!std::isfinite(p.z)) throw Error("build_graph: height function returned a non-finite value");
  return from_positions(std::move(topo), std::move(pos), std::move(support), delta_space);
}

SpacelikeGraph SpacelikeGraph::from_positions(std::shared_ptr<const Topology> topo, std::vector<Vec3> positions,
                                              std::optional<SupportSurface> support, double delta_space) {
  if (!topo) throw Error("SpacelikeGraph: missing topology");
  if (positions.size() != static_cast<std::size_t>(topo->domain.vertex_count()))
    throw Error("SpacelikeGraph: position count does not match the domain");
  SpacelikeGraph g(std::move(topo), std::move(positions), std::move(support));
  g.validate(delta_space);
  return g;
}

SpacelikeGraph SpacelikeGraph::with_positions(std::vector<Vec3> positions, double delta_space) const {
  return from_positions(topo_, std::move(positions), support_, delta_space);
}

SpacelikeGraph SpacelikeGraph::with_support(std::optional<SupportSurface> support) const {
  return from_positions(topo_, pos_, std::move(support), 0.0);
}

void SpacelikeGraph::validate(double delta_space) const {
  const auto& tris = topo_->tris;
  double scale = 0.0;
  for (const Vec3& p : pos_) scale = std::max(scale, std::hypot(p.x - domain().cx, p.y - domain().cy));
  scale = std::max(scale, 1e-300);
  double worst = 0.0;
  std::size_t worst_t = 0;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Vec3& a = pos_[tris[t][0]];
    const Vec3& b = pos_[tris[t][1]];
    const Vec3& c = pos_[tris[t][2]];
    if (!(kernels::planar_cross(a, b, c) > 1e-14 * scale * scale)) {
      std::ostringstream msg;
      msg << "degenerate or inverted triangle " << t;
      throw Error(msg.str());
    }
    const auto grad = kernels::triangle_slope(a, b, c);
    const double s = std::hypot(grad[0], grad[1]);
    if (!(s <= worst)) {
      worst = s;
      worst_t = t;
    }
  }
  if (!(worst <= 1.0 - delta_space) || !std::isfinite(worst)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "spacelike violation: triangle " << worst_t << " has |grad u| = " << worst << " (limit "
        << 1.0 - delta_space << ")";
    throw Error(msg.str());
  }
  if (support_) {
    for (int v : outer_loop()) {
      if (!on_surface(*support_, pos_[v], 1e-8)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "boundary vertex " << v << " is off the " << kind_name(*support_) << " (level residual "
            << level_residual(*support_, pos_[v]) << ")";
        throw Error(msg.str());
      }
    }
  }
}

double SpacelikeGraph::max_slope() const {
  double worst = 0.0;
  for (const Tri& t : topo_->tris) {
    const auto g = kernels::triangle_slope(pos_[t[0]], pos_[t[1]], pos_[t[2]]);
    worst = std::max(worst, std::hypot(g[0], g[1]));
  }
  return worst;
}

double SpacelikeGraph::diameter() const {
  const auto& loop = outer_loop();
  double best = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i)
    for (std::size_t j = i + 1; j < loop.size(); ++j) {
      const Vec3& a = pos_[loop[i]];
      const Vec3& b = pos_[loop[j]];
      best = std::max(best, std::hypot(a.x - b.x, a.y - b.y));
    }
  return best;
}

// --- geometry ----------------------------------------------------------------

std::vector<double> dual_masses(const SpacelikeGraph& g, Exec exec) {
  std::vector<kernels::CornerMasses> corner(g.triangles().size());
  kernels::dual_masses(g.positions(), g.triangles(), corner, exec);
  return kernels::scatter(g.triangles(), corner, g.vertex_count());
}

std::vector<Vec3> area_gradient(const SpacelikeGraph& g, Exec exec) {
  std::vector<kernels::AreaTerm> terms(g.triangles().size());
  kernels::area_terms(g.positions(), g.triangles(), terms, exec);
  std::vector<std::array<Vec3, 3>> corner(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) corner[t] = terms[t].grad;
  return kernels::scatter(g.triangles(), corner, g.vertex_count());
}

double area(const SpacelikeGraph& g, Exec exec) {
  std::vector<kernels::AreaTerm> terms(g.triangles().size());
  kernels::area_terms(g.positions(), g.triangles(), terms, exec);
  std::vector<double> a(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) a[t] = terms[t].area;
  return kernels::ordered_sum(a);
}

double algebraic_volume(const SpacelikeGraph& g, Exec exec) {
  std::vector<kernels::VolumeTerm> terms(g.triangles().size());
  kernels::volume_terms(g.positions(), g.triangles(), terms, exec);
  std::vector<double> v(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) v[t] = terms[t].volume;
  return kernels::ordered_sum(v);
}

std::vector<double> mean_curvature(const SpacelikeGraph& g, Exec exec) {
  const auto dA = area_gradient(g, exec);
  const auto M = dual_masses(g, exec);
  std::vector<double> H(g.vertex_count(), std::numeric_limits<double>::quiet_NaN());
  for (int v : g.interior()) H[v] = dA[v].z / (2.0 * M[v]);
  return H;
}

namespace {

// grad u at every vertex of one boundary loop, from the sector rays and the loop itself.
void boundary_normals(const SpacelikeGraph& g, const std::vector<int>& loop, std::vector<Vec3>& normals) {
  const Domain& d = g.domain();
  const auto pos = g.positions();
  const int K = d.sectors;
  const bool outer_ring = loop.front() == d.index(d.rings, 0);
  const int ring_b = outer_ring ? d.rings : 0;
  const int step = outer_ring ? -1 : 1;
  const int last_ring = outer_ring ? 0 : d.rings;
  const int available = std::abs(last_ring - ring_b) + 1;
  const int nodes = std::min(7, available);

  std::vector<double> rho_b(K), u_b(K);
  for (int k = 0; k < K; ++k) {
    const Vec3& p = pos[d.index(ring_b, k)];
    rho_b[k] = std::hypot(p.x - d.cx, p.y - d.cy);
    u_b[k] = p.z;
  }
  const double h = kTwoPi / K;
  std::vector<double> xs(nodes), fs(nodes);
  for (int k = 0; k < K; ++k) {
    for (int m = 0; m < nodes; ++m) {
      const Vec3& p = pos[d.index(ring_b + step * m, k)];
      xs[m] = std::hypot(p.x - d.cx, p.y - d.cy);
      fs[m] = p.z;
    }
    // The disc center sits at radius 0 on every ray.
    const double u_rho = lagrange_derivative(xs, fs, rho_b[k]);
    const double du_dphi = periodic_derivative(u_b, static_cast<std::size_t>(k), h);
    const double drho_dphi = periodic_derivative(rho_b, static_cast<std::size_t>(k), h);
    const double u_phi = du_dphi - u_rho * drho_dphi;
    const double phi = d.sector_angle(k);
    const double c = std::cos(phi), s = std::sin(phi);
    const double gx = u_rho * c - u_phi / rho_b[k] * s;
    const double gy = u_rho * s + u_phi / rho_b[k] * c;
    if (!(gx * gx + gy * gy < 1.0))
      throw Error("future_normal: reconstructed boundary gradient is not spacelike");
    normals[d.index(ring_b, k)] = graph_normal(gx, gy);
  }
}

}  // namespace

std::vector<Vec3> future_normal(const SpacelikeGraph& g) {
  const auto pos = g.positions();
  const auto tris = g.triangles();
  std::vector<Vec3> acc(g.vertex_count());
  for (const Tri& t : tris) {
    const Vec3& a = pos[t[0]];
    const Vec3& b = pos[t[1]];
    const Vec3& c = pos[t[2]];
    const auto grad = kernels::triangle_slope(a, b, c);
    const Vec3 n = graph_normal(grad[0], grad[1]) * (0.5 * kernels::planar_cross(a, b, c));
    for (int v : t) acc[v] += n;
  }
  std::vector<Vec3> N(g.vertex_count());
  for (std::size_t v = 0; v < N.size(); ++v) N[v] = lorentz_normalize(acc[v]);
  for (const auto& loop : g.loops()) boundary_normals(g, loop, N);
  return N;
}

double BoundaryFrame::invariant_error() const {
  const double e = eps.value;
  double err = 0.0;
  auto track = [&](double v) { err = std::max(err, std::abs(v)); };
  track(inner(tau, tau) - 1.0);
  track(inner(nu, nu) - 1.0);
  track(inner(N, N) + 1.0);
  track(inner(N_sigma, N_sigma) - e);
  track(inner(nu_sigma, nu_sigma) + e);
  track(inner(tau, nu));
  track(inner(tau, N));
  track(inner(nu, N));
  track(inner(tau, nu_sigma));
  track(inner(tau, N_sigma));
  track(inner(nu_sigma, N_sigma));
  track(det3(tau, nu, N) - 1.0);
  track(det3(tau, nu_sigma, N_sigma) - 1.0);
  const double m = inner(N, N_sigma);
  const double s = inner(N, nu_sigma);
  track(e * (m * m - s * s) + 1.0);
  return err;
}

std::vector<BoundaryFrame> boundary_frames(const SpacelikeGraph& g, const SupportSurface& s) {
  const auto N = future_normal(g);
  const auto pos = g.positions();
  const auto& loop = g.outer_loop();
  const std::size_t K = loop.size();
  std::vector<BoundaryFrame> frames;
  frames.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    const int v = loop[k];
    BoundaryFrame f;
    f.vertex = v;
    f.eps = support_sign(s);
    f.N = N[v];
    f.N_sigma = surface_normal(s, pos[v]);
    const Vec3 chord = pos[loop[(k + 1) % K]] - pos[loop[(k + K - 1) % K]];
    if (!(inner(chord, chord) > 0.0)) throw Error("boundary_frames: boundary tangent is not spacelike");
    Vec3 tau = lorentz_cross(f.N, f.N_sigma);
    if (!(inner(tau, tau) > 1e-20 * dot(chord, chord))) tau = chord + inner(chord, f.N) * f.N;
    tau = lorentz_normalize(tau);
    if (dot(tau, chord) < 0.0) tau = -tau;
    f.tau = tau;
    f.nu = lorentz_normalize(lorentz_cross(tau, f.N));
    if (det3(tau, f.nu, f.N) < 0.0) f.nu = -f.nu;
    f.nu_sigma = lorentz_normalize(lorentz_cross(tau, f.N_sigma));
    if (det3(tau, f.nu_sigma, f.N_sigma) < 0.0) f.nu_sigma = -f.nu_sigma;
    frames.push_back(f);
  }
  return frames;
}

double wetted_area(const SpacelikeGraph& g, const SupportSurface& s) {
  const SupportChart chart(s);
  const auto pos = g.positions();
  const auto& loop = g.outer_loop();
  std::vector<double> q, phi;
  q.reserve(loop.size());
  phi.reserve(loop.size());
  for (int v : loop) {
    if (!on_surface(s, pos[v], 1e-8)) throw Error("wetted_area: boundary vertex is off the support");
    q.push_back(chart.coordinate(pos[v]));
    phi.push_back(chart.angle(pos[v]));
  }
  for (std::size_t k = 0; k < phi.size(); ++k) {
    double inc = phi[(k + 1) % phi.size()] - phi[k];
    if (inc <= 0.0) inc += kTwoPi;
    if (!(inc > 0.0 && inc < std::numbers::pi))
      throw Error("wetted_area: boundary is not a graph over the support axis");
  }
  return chart.wetted_area(q, phi);
}

}  // namespace lcap
