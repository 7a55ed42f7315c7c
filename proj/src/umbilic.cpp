#include "lcap/umbilic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lcap {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double scale_of(const Vec3& x) { return std::max(1.0, dot(x, x)); }

Vec3 parse_vec3(const std::string& text) {
  std::istringstream in(text);
  Vec3 v;
  char sep = 0;
  if (!(in >> v.x >> sep >> v.y >> sep >> v.z)) throw Error("config: cannot parse vector '" + text + "'");
  return v;
}

std::string format_vec3(const Vec3& v) {
  std::ostringstream out;
  out.precision(17);
  out << v.x << "," << v.y << "," << v.z;
  return out.str();
}

// Plane {<x,v> = d} with v a future unit timelike vector.
struct CutPlane {
  Vec3 v;
  double d;
};

// Geodesic time t at which F(t, q(phi)) meets the cut plane.
double cut_time(const CutPlane& cut, double phi) {
  const double A = std::cos(phi) * cut.v.x + std::sin(phi) * cut.v.y;
  const double B = -cut.v.z;
  const double R = std::sqrt(B * B - A * A);
  const double beta = std::atanh(A / B);
  return std::asinh(cut.d / (std::copysign(1.0, B) * R)) - beta;
}

}  // namespace

SpacelikePlane SpacelikePlane::make(const Vec3& p, const Vec3& v) {
  if (inner(v, v) >= -kNullTolerance * dot(v, v))
    throw Error("SpacelikePlane: normal must be timelike (the plane must be spacelike)");
  Vec3 n = lorentz_normalize(v);
  if (inner(n, kTimeAxis) > 0.0) n = -n;
  return {p, n};
}

Vec3 WaistCircle::point(double phi) const { return p + r * Vec3{std::cos(phi), std::sin(phi), 0.0}; }

bool WaistCircle::contains(const Vec3& q, double tol) const {
  const Vec3 d = q - p;
  return std::abs(inner(d, kTimeAxis)) <= tol * r && std::abs(inner(d, d) - r * r) <= tol * r * r;
}

std::string kind_name(const SupportSurface& s) {
  return std::visit(overloaded{[](const SpacelikePlane&) { return std::string("plane"); },
                               [](const HyperbolicPlane&) { return std::string("hyperbolic"); },
                               [](const Pseudosphere&) { return std::string("pseudosphere"); }},
                    s);
}

CausalSign support_sign(const SupportSurface& s) {
  return std::holds_alternative<Pseudosphere>(s) ? CausalSign::timelike_support()
                                                 : CausalSign::spacelike_support();
}

double level_residual(const SupportSurface& s, const Vec3& x) {
  return std::visit(overloaded{[&](const SpacelikePlane& pl) { return inner(x - pl.p, pl.v); },
                               [&](const HyperbolicPlane& h) {
                                 const Vec3 d = x - h.p;
                                 return inner(d, d) + h.r * h.r;
                               },
                               [&](const Pseudosphere& ps) {
                                 const Vec3 d = x - ps.p;
                                 return inner(d, d) - ps.r * ps.r;
                               }},
                    s);
}

bool on_surface(const SupportSurface& s, const Vec3& x, double tol) {
  if (std::abs(level_residual(s, x)) > tol * scale_of(x)) return false;
  if (const auto* h = std::get_if<HyperbolicPlane>(&s)) {
    const double dz = x.z - h->p.z;
    return h->branch == Branch::Upper ? dz >= 0.0 : dz <= 0.0;
  }
  return true;
}

Vec3 surface_normal(const SupportSurface& s, const Vec3& x) {
  if (!on_surface(s, x)) throw Error("surface_normal: point is not on the " + kind_name(s));
  return std::visit(overloaded{[](const SpacelikePlane& pl) { return pl.v; },
                               [&](const HyperbolicPlane& h) {
                                 Vec3 n = (x - h.p) * (1.0 / h.r);
                                 return inner(n, kTimeAxis) < 0.0 ? n : -n;
                               },
                               [&](const Pseudosphere& ps) { return (x - ps.p) * (1.0 / ps.r); }},
                    s);
}

std::optional<double> mean_curvature_analytic(const SupportSurface& s) {
  return std::visit(overloaded{[](const SpacelikePlane&) -> std::optional<double> { return 0.0; },
                               [](const HyperbolicPlane& h) -> std::optional<double> {
                                 return h.branch == Branch::Upper ? 1.0 / h.r : -1.0 / h.r;
                               },
                               [](const Pseudosphere&) -> std::optional<double> { return std::nullopt; }},
                    s);
}

Vec3 geodesic_param(double t, const Vec3& q) {
  if (!WaistCircle{}.contains(q)) throw Error("geodesic_param: q is not on the unit waist");
  return std::cosh(t) * q + std::sinh(t) * kTimeAxis;
}

Vec3 geodesic_param(const Pseudosphere& s, double t, const Vec3& q) {
  return s.p + s.r * geodesic_param(t, q);
}

Vec3 project_pi(const Vec3& p) {
  if (std::abs(inner(p, p) - 1.0) > 1e-9 * scale_of(p))
    throw Error("project_pi: point is not on the unit pseudosphere");
  const double pa = inner(p, kTimeAxis);
  return (p + pa * kTimeAxis) * (1.0 / std::sqrt(1.0 + pa * pa));
}

Vec3 project_pi_differential(const Vec3& p, const Vec3& v) {
  if (std::abs(inner(p, p) - 1.0) > 1e-9 * scale_of(p))
    throw Error("project_pi_differential: point is not on the unit pseudosphere");
  if (std::abs(inner(p, v)) > 1e-9 * std::sqrt(scale_of(p) * std::max(dot(v, v), 1e-300)))
    throw Error("project_pi_differential: vector is not tangent to the pseudosphere");
  const double pa = inner(p, kTimeAxis);
  const double va = inner(v, kTimeAxis);
  const double w = 1.0 + pa * pa;
  return (v + va * kTimeAxis) * (1.0 / std::sqrt(w)) - (p + pa * kTimeAxis) * (pa * va / (w * std::sqrt(w)));
}

double analytic_contact_angle(const SupportSurface& m, const Pseudosphere& s) {
  // Reduce to S^2_1(O,1) by x -> (x - s.p)/s.r; angles are invariant.
  const double inv = 1.0 / s.r;
  return std::visit(
      overloaded{[&](const SpacelikePlane& pl) {
                   const Vec3 p = (pl.p - s.p) * inv;
                   return inner(p, pl.v);
                 },
                 [&](const HyperbolicPlane& h) {
                   const HyperbolicPlane hn{(h.p - s.p) * inv, h.r * inv, h.branch};
                   // Validates that the branch actually meets S^2_1.
                   (void)support_intersection(hn, 4);
                   const double value = (1.0 - hn.r * hn.r - inner(hn.p, hn.p)) / (2.0 * hn.r);
                   return hn.branch == Branch::Upper ? value : -value;
                 },
                 [](const Pseudosphere&) -> double {
                   throw Error("analytic_contact_angle: the surface must be spacelike");
                 }},
      m);
}

double cap_boundary_height(double c, double r) {
  if (c == 0.0) throw Error("cap_boundary_height: c must be nonzero");
  if (!(r > 0.0)) throw Error("cap_boundary_height: r must be positive");
  return (c * c - r * r - 1.0) / (2.0 * c);
}

std::vector<Vec3> support_intersection(const SupportSurface& m, int count) {
  if (count < 1) throw Error("support_intersection: count must be positive");
  CutPlane cut{};
  const HyperbolicPlane* hyp = nullptr;
  if (const auto* pl = std::get_if<SpacelikePlane>(&m)) {
    cut = {pl->v, inner(pl->p, pl->v)};
  } else if ((hyp = std::get_if<HyperbolicPlane>(&m))) {
    // <x,x> = 1 and <x-p,x-p> = -r^2 give the plane <x,p> = (1 + r^2 + <p,p>)/2.
    const double pp = inner(hyp->p, hyp->p);
    if (pp >= 0.0)
      throw Error("support_intersection: hyperbolic plane center must be timelike for a spacelike intersection");
    const double norm = std::sqrt(-pp);
    Vec3 v = hyp->p * (1.0 / norm);
    double d = (1.0 + hyp->r * hyp->r + pp) / (2.0 * norm);
    if (inner(v, kTimeAxis) > 0.0) {
      v = -v;
      d = -d;
    }
    cut = {v, d};
  } else {
    throw Error("support_intersection: the surface must be a spacelike plane or a hyperbolic plane");
  }
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double phi = kTwoPi * k / count;
    const double t = cut_time(cut, phi);
    const Vec3 x = std::cosh(t) * Vec3{std::cos(phi), std::sin(phi), 0.0} + std::sinh(t) * kTimeAxis;
    if (hyp && !on_surface(m, x, 1e-7))
      throw Error("support_intersection: the hyperbolic plane branch does not meet the pseudosphere");
    pts.push_back(x);
  }
  return pts;
}

// --- SupportChart ----------------------------------------------------------

SupportChart::SupportChart(SupportSurface s) : surface_(std::move(s)) {
  std::visit([this](const auto& surf) {
    cx_ = surf.p.x;
    cy_ = surf.p.y;
  }, surface_);
  if (const auto* pl = std::get_if<SpacelikePlane>(&surface_)) {
    if (!(pl->v.z > 0.0) || std::abs(inner(pl->v, pl->v) + 1.0) > 1e-9)
      throw Error("SupportChart: plane normal must be unit future timelike");
  }
}

Vec3 SupportChart::position(double q, double phi) const {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return std::visit(
      overloaded{[&](const SpacelikePlane& pl) {
                   const double x = cx_ + q * c;
                   const double y = cy_ + q * s;
                   const double z = pl.p.z + (pl.v.x * (x - pl.p.x) + pl.v.y * (y - pl.p.y)) / pl.v.z;
                   return Vec3{x, y, z};
                 },
                 [&](const HyperbolicPlane& h) {
                   const double root = std::sqrt(h.r * h.r + q * q);
                   return Vec3{cx_ + q * c, cy_ + q * s, h.p.z + (h.branch == Branch::Upper ? root : -root)};
                 },
                 [&](const Pseudosphere& ps) {
                   const double ch = std::cosh(q);
                   return ps.p + ps.r * Vec3{ch * c, ch * s, std::sinh(q)};
                 }},
      surface_);
}

Vec3 SupportChart::tangent(double q, double phi) const {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return std::visit(
      overloaded{[&](const SpacelikePlane& pl) { return Vec3{c, s, (pl.v.x * c + pl.v.y * s) / pl.v.z}; },
                 [&](const HyperbolicPlane& h) {
                   const double dz = q / std::sqrt(h.r * h.r + q * q);
                   return Vec3{c, s, h.branch == Branch::Upper ? dz : -dz};
                 },
                 [&](const Pseudosphere& ps) {
                   const double sh = std::sinh(q);
                   return ps.r * Vec3{sh * c, sh * s, std::cosh(q)};
                 }},
      surface_);
}

double SupportChart::coordinate(const Vec3& x) const {
  return std::visit(overloaded{[&](const Pseudosphere& ps) { return std::asinh((x.z - ps.p.z) / ps.r); },
                               [&](const auto&) { return std::hypot(x.x - cx_, x.y - cy_); }},
                    surface_);
}

double SupportChart::angle(const Vec3& x) const { return std::atan2(x.y - cy_, x.x - cx_); }

std::vector<double> periodic_angle_weights(std::span<const double> phi) {
  const std::size_t n = phi.size();
  std::vector<double> w(n, 0.0);
  if (n == 0) return w;
  if (n == 1) {
    w[0] = kTwoPi;
    return w;
  }
  for (std::size_t k = 0; k < n; ++k) {
    double next = phi[(k + 1) % n] - phi[k];
    double prev = phi[k] - phi[(k + n - 1) % n];
    if (next <= 0.0) next += kTwoPi;
    if (prev <= 0.0) prev += kTwoPi;
    w[k] = 0.5 * (next + prev);
  }
  return w;
}

double SupportChart::wetted_area(std::span<const double> q, std::span<const double> phi) const {
  if (q.size() != phi.size()) throw Error("wetted_area: size mismatch");
  const std::size_t n = q.size();
  if (const auto* pl = std::get_if<SpacelikePlane>(&surface_)) {
    // Shoelace area of the boundary polygon, scaled by the plane's area element 1/v3.
    double twice = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = (k + 1) % n;
      twice += q[k] * q[j] * std::sin(phi[j] - phi[k]);
    }
    return 0.5 * twice / pl->v.z;
  }
  const std::vector<double> w = periodic_angle_weights(phi);
  double sum = 0.0;
  if (const auto* ps = std::get_if<Pseudosphere>(&surface_)) {
    for (std::size_t k = 0; k < n; ++k) sum += std::sinh(q[k]) * w[k];
    return ps->r * ps->r * sum;
  }
  const auto& h = std::get<HyperbolicPlane>(surface_);
  for (std::size_t k = 0; k < n; ++k) sum += h.r * (std::sqrt(h.r * h.r + q[k] * q[k]) - h.r) * w[k];
  return sum;
}

std::vector<double> SupportChart::wetted_gradient(std::span<const double> q, std::span<const double> phi) const {
  const std::size_t n = q.size();
  std::vector<double> g(n, 0.0);
  if (const auto* pl = std::get_if<SpacelikePlane>(&surface_)) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = (k + 1) % n;
      const std::size_t i = (k + n - 1) % n;
      g[k] = 0.5 * (q[j] * std::sin(phi[j] - phi[k]) + q[i] * std::sin(phi[k] - phi[i])) / pl->v.z;
    }
    return g;
  }
  const std::vector<double> w = periodic_angle_weights(phi);
  if (const auto* ps = std::get_if<Pseudosphere>(&surface_)) {
    for (std::size_t k = 0; k < n; ++k) g[k] = ps->r * ps->r * std::cosh(q[k]) * w[k];
    return g;
  }
  const auto& h = std::get<HyperbolicPlane>(surface_);
  for (std::size_t k = 0; k < n; ++k) g[k] = h.r * q[k] / std::sqrt(h.r * h.r + q[k] * q[k]) * w[k];
  return g;
}

SupportChart::WettedHessian SupportChart::wetted_hessian(std::span<const double> q,
                                                         std::span<const double> phi) const {
  const std::size_t n = q.size();
  WettedHessian hess{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  if (const auto* pl = std::get_if<SpacelikePlane>(&surface_)) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = (k + 1) % n;
      hess.next[k] = 0.5 * std::sin(phi[j] - phi[k]) / pl->v.z;
    }
    return hess;
  }
  const std::vector<double> w = periodic_angle_weights(phi);
  if (const auto* ps = std::get_if<Pseudosphere>(&surface_)) {
    for (std::size_t k = 0; k < n; ++k) hess.diag[k] = ps->r * ps->r * std::sinh(q[k]) * w[k];
    return hess;
  }
  const auto& h = std::get<HyperbolicPlane>(surface_);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = h.r * h.r + q[k] * q[k];
    hess.diag[k] = h.r * h.r * h.r / (s * std::sqrt(s)) * w[k];
  }
  return hess;
}

// Plane: exact integral of the plane height over the fan polygon around the
// chart origin. Curved supports: F(q_k) w_k with F(q) = int_0^q x3 rho drho.
namespace {

struct RadialVolume {
  double F, dF, d2F;
};

RadialVolume radial_volume(const SupportSurface& s, double q) {
  if (const auto* ps = std::get_if<Pseudosphere>(&s)) {
    const double r2 = ps->r * ps->r;
    const double sh = std::sinh(q);
    const double ch = std::cosh(q);
    const double z0 = ps->p.z;
    return {r2 * (z0 * sh * sh / 2.0 + ps->r * sh * sh * sh / 3.0), r2 * ch * sh * (z0 + ps->r * sh),
            r2 * (z0 * std::cosh(2.0 * q) + ps->r * (2.0 * sh * ch * ch + sh * sh * sh))};
  }
  const auto& h = std::get<HyperbolicPlane>(s);
  const double sgn = h.branch == Branch::Upper ? 1.0 : -1.0;
  const double root = std::sqrt(h.r * h.r + q * q);
  return {h.p.z * q * q / 2.0 + sgn * (root * root * root - h.r * h.r * h.r) / 3.0, q * (h.p.z + sgn * root),
          h.p.z + sgn * (root + q * q / root)};
}

}  // namespace

double SupportChart::support_volume(std::span<const double> q, std::span<const double> phi) const {
  if (q.size() != phi.size()) throw Error("support_volume: size mismatch");
  const std::size_t n = q.size();
  double sum = 0.0;
  if (std::holds_alternative<SpacelikePlane>(surface_)) {
    const double z0 = position(0.0, 0.0).z;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = (k + 1) % n;
      const double zk = position(q[k], phi[k]).z - z0;
      const double zj = position(q[j], phi[j]).z - z0;
      sum += 0.5 * std::sin(phi[j] - phi[k]) * q[k] * q[j] * (z0 + (zk + zj) / 3.0);
    }
    return sum;
  }
  const std::vector<double> w = periodic_angle_weights(phi);
  for (std::size_t k = 0; k < n; ++k) sum += radial_volume(surface_, q[k]).F * w[k];
  return sum;
}

std::vector<double> SupportChart::support_volume_gradient(std::span<const double> q,
                                                          std::span<const double> phi) const {
  const std::size_t n = q.size();
  std::vector<double> g(n, 0.0);
  if (std::holds_alternative<SpacelikePlane>(surface_)) {
    const double z0 = position(0.0, 0.0).z;
    std::vector<double> slope(n);
    for (std::size_t k = 0; k < n; ++k) slope[k] = tangent(q[k], phi[k]).z;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = (k + 1) % n;
      const double s = 0.5 * std::sin(phi[j] - phi[k]);
      const double mean = z0 + (q[k] * slope[k] + q[j] * slope[j]) / 3.0;
      g[k] += s * q[j] * (mean + q[k] * slope[k] / 3.0);
      g[j] += s * q[k] * (mean + q[j] * slope[j] / 3.0);
    }
    return g;
  }
  const std::vector<double> w = periodic_angle_weights(phi);
  for (std::size_t k = 0; k < n; ++k) g[k] = radial_volume(surface_, q[k]).dF * w[k];
  return g;
}

SupportChart::WettedHessian SupportChart::support_volume_hessian(std::span<const double> q,
                                                                 std::span<const double> phi) const {
  const std::size_t n = q.size();
  WettedHessian hess{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  if (std::holds_alternative<SpacelikePlane>(surface_)) {
    const double z0 = position(0.0, 0.0).z;
    std::vector<double> slope(n);
    for (std::size_t k = 0; k < n; ++k) slope[k] = tangent(q[k], phi[k]).z;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = (k + 1) % n;
      const double s = 0.5 * std::sin(phi[j] - phi[k]);
      hess.diag[k] += s * q[j] * 2.0 * slope[k] / 3.0;
      hess.diag[j] += s * q[k] * 2.0 * slope[j] / 3.0;
      hess.next[k] = s * (z0 + 2.0 * (q[k] * slope[k] + q[j] * slope[j]) / 3.0);
    }
    return hess;
  }
  const std::vector<double> w = periodic_angle_weights(phi);
  for (std::size_t k = 0; k < n; ++k) hess.diag[k] = radial_volume(surface_, q[k]).d2F * w[k];
  return hess;
}

// --- config ----------------------------------------------------------------

std::string to_config(const SupportSurface& s) {
  std::ostringstream out;
  out.precision(17);
  out << "kind=" << kind_name(s) << "\n";
  std::visit(overloaded{[&](const SpacelikePlane& pl) {
                          out << "center=" << format_vec3(pl.p) << "\n"
                              << "normal=" << format_vec3(pl.v) << "\n";
                        },
                        [&](const HyperbolicPlane& h) {
                          out << "center=" << format_vec3(h.p) << "\n"
                              << "radius=" << h.r << "\n"
                              << "branch=" << (h.branch == Branch::Upper ? "upper" : "lower") << "\n";
                        },
                        [&](const Pseudosphere& ps) {
                          out << "center=" << format_vec3(ps.p) << "\n"
                              << "radius=" << ps.r << "\n";
                        }},
             s);
  return out.str();
}

SupportSurface support_from_config(const std::map<std::string, std::string>& kv) {
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };
  const std::string kind = get("kind", "pseudosphere");
  const Vec3 center = parse_vec3(get("center", "0,0,0"));
  const double radius = std::stod(get("radius", "1"));
  if (!(radius > 0.0)) throw Error("config: radius must be positive");
  if (kind == "pseudosphere") return Pseudosphere{center, radius};
  if (kind == "plane") return SpacelikePlane::make(center, parse_vec3(get("normal", "0,0,1")));
  if (kind == "hyperbolic") {
    const std::string b = get("branch", "upper");
    if (b != "upper" && b != "lower") throw Error("config: branch must be upper or lower");
    return HyperbolicPlane{center, radius, b == "upper" ? Branch::Upper : Branch::Lower};
  }
  throw Error("config: unknown support kind '" + kind + "'");
}

}  // namespace lcap
