#include "lcap/theorems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "stencil.hpp"

namespace lcap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kCurveStencilHalf = 4;

std::string printf_string(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  va_list copy;
  va_copy(copy, args);
  const int n = std::vsnprintf(nullptr, 0, fmt, copy);
  va_end(copy);
  std::string out(static_cast<std::size_t>(std::max(n, 0)) + 1, '\0');
  std::vsnprintf(out.data(), out.size(), fmt, args);
  va_end(args);
  out.resize(out.size() - 1);
  return out;
}

double wrap_angle(double d) {
  while (d > std::numbers::pi) d -= kTwoPi;
  while (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

std::vector<Vec3> periodic_tangents(const std::vector<Vec3>& pts, double h) {
  const std::size_t n = pts.size();
  std::vector<double> cx(n), cy(n), cz(n);
  for (std::size_t k = 0; k < n; ++k) {
    cx[k] = pts[k].x;
    cy[k] = pts[k].y;
    cz[k] = pts[k].z;
  }
  const auto dx = detail::periodic_derivative(cx, h, 1, kCurveStencilHalf);
  const auto dy = detail::periodic_derivative(cy, h, 1, kCurveStencilHalf);
  const auto dz = detail::periodic_derivative(cz, h, 1, kCurveStencilHalf);
  std::vector<Vec3> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = {dx[k], dy[k], dz[k]};
  return out;
}

double orient(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

bool on_segment(double ax, double ay, double bx, double by, double px, double py) {
  return std::min(ax, bx) <= px && px <= std::max(ax, bx) && std::min(ay, by) <= py && py <= std::max(ay, by);
}

bool segments_meet(double ax, double ay, double bx, double by, double cx, double cy, double dx, double dy) {
  const double o1 = orient(ax, ay, bx, by, cx, cy);
  const double o2 = orient(ax, ay, bx, by, dx, dy);
  const double o3 = orient(cx, cy, dx, dy, ax, ay);
  const double o4 = orient(cx, cy, dx, dy, bx, by);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
  if (o1 == 0 && on_segment(ax, ay, bx, by, cx, cy)) return true;
  if (o2 == 0 && on_segment(ax, ay, bx, by, dx, dy)) return true;
  if (o3 == 0 && on_segment(cx, cy, dx, dy, ax, ay)) return true;
  if (o4 == 0 && on_segment(cx, cy, dx, dy, bx, by)) return true;
  return false;
}

// Classifies values that must share one strict sign; returns the first
// index breaking the majority sign, if any.
Side strict_side(const std::vector<double>& vals, std::optional<int>& witness) {
  const auto pos = std::count_if(vals.begin(), vals.end(), [](double v) { return v > 0.0; });
  const bool up = 2 * static_cast<std::size_t>(pos) >= vals.size();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (up ? !(vals[i] > 0.0) : !(vals[i] < 0.0)) {
      witness = static_cast<int>(i);
      return Side::Violation;
    }
  }
  return up ? Side::Above : Side::Below;
}

Side contained_side(const std::vector<double>& vals, double tol, std::optional<int>& witness) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!(std::abs(vals[i]) < tol)) {
      witness = static_cast<int>(i);
      return Side::Violation;
    }
  }
  return Side::Contained;
}

// Shared decision: `excess` is the signed gap to the critical curvature
// (H for a plane, |H| - 1/r for a hyperbolic plane).
OneSideReport decide(const std::vector<double>& values, const std::vector<double>& excess,
                     const std::vector<int>& ids, const OneSideOptions& opt) {
  OneSideReport rep;
  if (values.empty()) throw Error("one-side check: no interior samples");
  rep.min_value = *std::min_element(values.begin(), values.end());
  rep.max_value = *std::max_element(values.begin(), values.end());
  const double lo = *std::min_element(excess.begin(), excess.end());
  const double hi = *std::max_element(excess.begin(), excess.end());
  std::optional<int> w;
  if (std::max(std::abs(lo), std::abs(hi)) <= opt.curvature_tol) {
    rep.side = contained_side(values, opt.contain_tol, w);
  } else if (lo * hi > 0.0) {
    rep.side = strict_side(values, w);
  } else {
    rep.side = Side::HypothesisNotMet;
  }
  if (w) rep.witness = ids.empty() ? *w : ids[*w];
  return rep;
}

}  // namespace

std::string format_verdict(const Verdict& v) {
  std::string line = printf_string("%-40s %s  value=%.3e tol=%.1e", v.check.c_str(), v.pass ? "PASS" : "FAIL",
                                   v.value, v.tolerance);
  if (!v.witness.empty()) line += "  witness=" + v.witness;
  return line;
}

// --- curves -------------------------------------------------------------------------

SampledCurve SampledCurve::from_function(const std::function<Vec3(double)>& alpha, int samples) {
  if (samples < 2 * kCurveStencilHalf + 1) throw Error("SampledCurve: too few samples");
  SampledCurve c;
  c.points.resize(samples);
  for (int k = 0; k < samples; ++k) c.points[k] = alpha(kTwoPi * k / samples);
  return c;
}

SampledCurve SampledCurve::geodesic_graph(const std::function<double(double)>& t, int samples) {
  return from_function([&](double s) { return geodesic_param(t(s), {std::cos(s), std::sin(s), 0.0}); }, samples);
}

SampledCurve SampledCurve::tilted_section(double m, double b, int samples) {
  if (!(std::abs(m) < 1.0)) throw Error("tilted_section: the plane must be spacelike (|m| < 1)");
  // On the ray F(t, q(phi)): sinh t = m cosh t cos phi + b.
  return geodesic_graph(
      [m, b](double phi) {
        const double mc = m * std::cos(phi);
        return std::atanh(mc) + std::asinh(b / std::sqrt(1.0 - mc * mc));
      },
      samples);
}

double SampledCurve::spacing() const { return kTwoPi / static_cast<double>(points.size()); }

std::vector<Vec3> SampledCurve::tangents() const { return periodic_tangents(points, spacing()); }

double SampledCurve::sphere_residual() const {
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, std::abs(inner(p, p) - 1.0));
  return worst;
}

CoveringReport check_covering(const SampledCurve& c, double null_tol) {
  CoveringReport rep;
  const int n = c.size();
  const auto T = c.tangents();
  for (int k = 0; k < n; ++k) {
    const double ll = inner(T[k], T[k]);
    const double ee = dot(T[k], T[k]);
    if (!(ll > null_tol * ee)) {
      rep.spacelike = false;
      rep.failure_sample = k;
      rep.failure_norm = ee > 0.0 ? ll / ee : 0.0;
      break;
    }
  }

  std::vector<Vec3> psi(n);
  for (int k = 0; k < n; ++k) psi[k] = project_pi(c.points[k]);
  const auto dpsi = periodic_tangents(psi, c.spacing());
  const Vec3 a{0.0, 0.0, 1.0};
  for (int k = 0; k < n; ++k) {
    const double pa = inner(c.points[k], a);
    const double va = inner(T[k], a);
    const double rhs = inner(T[k], T[k]);
    if (!(rhs > 0.0)) continue;
    const double lhs = inner(dpsi[k], dpsi[k]) * (1.0 + pa * pa);
    rep.norm_identity_error = std::max(rep.norm_identity_error, std::abs(lhs - rhs) / rhs);
    rep.full_identity_error =
        std::max(rep.full_identity_error, std::abs(lhs - rhs - va * va / (1.0 + pa * pa)) / rhs);
  }

  double total = 0.0;
  int up = 0;
  int down = 0;
  for (int k = 0; k < n; ++k) {
    const Vec3& p = psi[k];
    const Vec3& q = psi[(k + 1) % n];
    const double d = wrap_angle(std::atan2(q.y, q.x) - std::atan2(p.y, p.x));
    total += d;
    if (d > 0.0) ++up;
    if (d < 0.0) ++down;
  }
  rep.winding = static_cast<int>(std::lround(total / kTwoPi));
  rep.monotone = up == n || down == n;

  // Embeddedness in the chart F(t, q) -> e^t q, which is injective on S^2_1.
  std::vector<double> ex(n), ey(n);
  for (int k = 0; k < n; ++k) {
    const double s = std::exp(std::asinh(c.points[k].z));
    ex[k] = s * psi[k].x;
    ey[k] = s * psi[k].y;
  }
  rep.embedded = !find_crossing(ex, ey).has_value();
  rep.graph_on_waist = rep.spacelike && rep.monotone && std::abs(rep.winding) == 1;
  return rep;
}

int winding_number(const std::vector<double>& x, const std::vector<double>& y, double cx, double cy) {
  const std::size_t n = x.size();
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = (k + 1) % n;
    total += wrap_angle(std::atan2(y[j] - cy, x[j] - cx) - std::atan2(y[k] - cy, x[k] - cx));
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

std::optional<std::pair<int, int>> find_crossing(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  if (n < 4) return std::nullopt;
  // Sweep edges ordered by their left end; only edges with overlapping x-ranges are tested.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto xmin = [&](int e) { return std::min(x[e], x[(e + 1) % n]); };
  auto xmax = [&](int e) { return std::max(x[e], x[(e + 1) % n]); };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return xmin(a) < xmin(b) || (xmin(a) == xmin(b) && a < b); });
  std::optional<std::pair<int, int>> best;
  for (int ii = 0; ii < n; ++ii) {
    const int e = order[ii];
    const double right = xmax(e);
    for (int jj = ii + 1; jj < n && xmin(order[jj]) <= right; ++jj) {
      const int f = order[jj];
      const int d = std::abs(e - f);
      if (d <= 1 || d == n - 1) continue;
      const int e1 = (e + 1) % n;
      const int f1 = (f + 1) % n;
      if (segments_meet(x[e], y[e], x[e1], y[e1], x[f], y[f], x[f1], y[f1])) {
        const std::pair<int, int> hit{std::min(e, f), std::max(e, f)};
        if (!best || hit < *best) best = hit;
      }
    }
  }
  return best;
}

PlaneGraphReport check_graph_on_plane(const SampledCurve& c, double separation_tol) {
  PlaneGraphReport rep;
  const int n = c.size();
  std::vector<double> x(n), y(n);
  for (int k = 0; k < n; ++k) {
    x[k] = c.points[k].x;
    y[k] = c.points[k].y;
  }

  // Closest projected pair by a sorted sweep.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b] || (x[a] == x[b] && a < b); });
  double best = std::numeric_limits<double>::infinity();
  std::pair<int, int> pair{0, 0};
  for (int ii = 0; ii < n; ++ii) {
    for (int jj = ii + 1; jj < n && x[order[jj]] - x[order[ii]] < best; ++jj) {
      const double d = std::hypot(x[order[jj]] - x[order[ii]], y[order[jj]] - y[order[ii]]);
      if (d < best) {
        best = d;
        pair = {std::min(order[ii], order[jj]), std::max(order[ii], order[jj])};
      }
    }
  }
  rep.min_separation = best;
  if (!(best > separation_tol)) {
    rep.injective = false;
    rep.witness = pair;
  }

  if (const auto hit = find_crossing(x, y)) {
    rep.simple = false;
    if (!rep.witness) rep.witness = hit;
  }
  rep.winding = winding_number(x, y);
  return rep;
}

std::vector<SampledCurve> random_spacelike_family(int count, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(0.05, 1.0);
  std::vector<SampledCurve> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (i % 2 == 0) {
      const double m = 0.9 * unit(rng);
      const double b = unit(rng);
      const double beta = std::numbers::pi * unit(rng);
      out.push_back(SampledCurve::geodesic_graph(
          [=](double phi) {
            const double mc = m * std::cos(phi - beta);
            return std::atanh(mc) + std::asinh(b / std::sqrt(1.0 - mc * mc));
          },
          samples));
    } else {
      std::array<double, 7> coef{};
      for (double& v : coef) v = unit(rng);
      double bound = 0.0;
      for (int k = 1; k <= 3; ++k) bound += k * (std::abs(coef[2 * k - 1]) + std::abs(coef[2 * k]));
      const double s = 0.9 * scale(rng) / bound;
      out.push_back(SampledCurve::geodesic_graph(
          [=](double phi) {
            double t = coef[0];
            for (int k = 1; k <= 3; ++k) t += s * (coef[2 * k - 1] * std::cos(k * phi) + coef[2 * k] * std::sin(k * phi));
            return t;
          },
          samples));
    }
  }
  return out;
}

// --- one side ---------------------------------------------------------------------

const char* to_string(Side s) {
  switch (s) {
    case Side::Above: return "above";
    case Side::Below: return "below";
    case Side::Contained: return "contained";
    case Side::Violation: return "violation";
    case Side::HypothesisNotMet: return "hypothesis-not-met";
  }
  return "?";
}

OneSideReport check_one_side_plane(const SpacelikeGraph& g, const SpacelikePlane& P, const OneSideOptions& opt) {
  const auto pos = g.positions();
  auto height = [&](const Vec3& x) { return -inner(x - P.p, P.v); };
  for (const auto& loop : g.loops())
    for (int v : loop)
      if (!(std::abs(height(pos[v])) <= opt.boundary_tol))
        throw Error(printf_string("check_one_side_plane: boundary vertex %d is off the plane by %.3e", v,
                                height(pos[v])));
  const auto H = mean_curvature(g);
  std::vector<double> vals, excess;
  std::vector<int> ids(g.interior().begin(), g.interior().end());
  for (int v : ids) {
    vals.push_back(height(pos[v]));
    excess.push_back(H[v]);
  }
  auto rep = decide(vals, excess, ids, opt);
  rep.min_H = *std::min_element(excess.begin(), excess.end());
  rep.max_H = *std::max_element(excess.begin(), excess.end());
  return rep;
}

double foliation_parameter(const HyperbolicPlane& Hn, const Vec3& x) {
  const double dx = x.x - Hn.p.x;
  const double dy = x.y - Hn.p.y;
  return (x.z - Hn.p.z) - std::sqrt(Hn.r * Hn.r + dx * dx + dy * dy);
}

OneSideReport check_one_side_hyperbolic(const SpacelikeGraph& g, const HyperbolicPlane& Hn,
                                        const OneSideOptions& opt) {
  if (Hn.branch != Branch::Upper) throw Error("check_one_side_hyperbolic: the foliation uses the upper branch");
  const auto pos = g.positions();
  for (const auto& loop : g.loops())
    for (int v : loop) {
      const double t = foliation_parameter(Hn, pos[v]);
      if (!std::isfinite(t)) throw Error(printf_string("check_one_side_hyperbolic: vertex %d outside the chart", v));
      if (!(std::abs(t) <= opt.boundary_tol))
        throw Error(printf_string("check_one_side_hyperbolic: boundary vertex %d is off the support by %.3e", v, t));
    }
  const auto H = mean_curvature(g);
  std::vector<double> vals, excess, curv;
  std::vector<int> ids(g.interior().begin(), g.interior().end());
  for (int v : ids) {
    const double t = foliation_parameter(Hn, pos[v]);
    if (!std::isfinite(t)) throw Error(printf_string("check_one_side_hyperbolic: vertex %d outside the chart", v));
    vals.push_back(t);
    excess.push_back(std::abs(H[v]) - 1.0 / Hn.r);
    curv.push_back(H[v]);
  }
  auto rep = decide(vals, excess, ids, opt);
  rep.min_H = *std::min_element(curv.begin(), curv.end());
  rep.max_H = *std::max_element(curv.begin(), curv.end());
  return rep;
}

OneSideReport check_one_side_plane(const RotationalProfile& prof, int samples, const OneSideOptions& opt) {
  if (prof.rho0() != 0.0) throw Error("check_one_side_plane: profile must describe a ball");
  const double top = prof.height(prof.rho1());
  std::vector<double> vals(samples), excess(samples, prof.H());
  for (int i = 0; i < samples; ++i) vals[i] = prof.height(prof.rho1() * i / samples) - top;
  auto rep = decide(vals, excess, {}, opt);
  rep.min_H = rep.max_H = prof.H();
  return rep;
}

OneSideReport check_one_side_hyperbolic(const RotationalProfile& prof, double u_offset, const HyperbolicPlane& Hn,
                                        int samples, const OneSideOptions& opt) {
  if (prof.rho0() != 0.0) throw Error("check_one_side_hyperbolic: profile must describe a ball");
  if (Hn.p.x != 0.0 || Hn.p.y != 0.0) throw Error("check_one_side_hyperbolic: support must share the profile axis");
  auto t_at = [&](double rho) {
    return foliation_parameter(Hn, {rho, 0.0, u_offset + prof.height(rho)});
  };
  const double tb = t_at(prof.rho1());
  if (!(std::abs(tb) <= opt.boundary_tol))
    throw Error(printf_string("check_one_side_hyperbolic: profile boundary is off the support by %.3e", tb));
  std::vector<double> vals(samples), excess(samples, std::abs(prof.H()) - 1.0 / Hn.r);
  for (int i = 0; i < samples; ++i) vals[i] = t_at(prof.rho1() * i / samples);
  auto rep = decide(vals, excess, {}, opt);
  rep.min_H = rep.max_H = prof.H();
  return rep;
}

}  // namespace lcap
