#include "lcap/hopf.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>

#include "stencil.hpp"

namespace lcap {

namespace {

using boost::math::quadrature::gauss_kronrod;
constexpr double kQuadTol = 1e-13;
constexpr int kRadialPoints = 7;
constexpr int kAngularHalf = 4;

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  return gauss_kronrod<double, 21>::integrate(f, a, b, 8, kQuadTol);
}

// Nodes of the radial stencil around ring j. A disc extends through the
// center by the reflection x(-r, t) = x(r, t + pi), so only the outer ring
// needs a one-sided window.
std::vector<int> radial_window(const ConformalPatch& p, int j) {
  int lo = j - kRadialPoints / 2;
  if (!p.disc) lo = std::max(lo, 0);
  lo = std::min(lo, p.rings - (kRadialPoints - 1));
  std::vector<int> w(kRadialPoints);
  for (int i = 0; i < kRadialPoints; ++i) w[i] = lo + i;
  return w;
}

double signed_radius(const ConformalPatch& p, int j) { return j >= 0 ? p.r[j] : -p.r[-j]; }

std::size_t reflected(const ConformalPatch& p, int j, int k) {
  if (j >= 0) return p.node(j, k);
  return p.node(-j, (k + p.sectors / 2) % p.sectors);
}

struct RadialWeights {
  std::vector<int> rings;
  std::vector<double> d1, d2;
};

RadialWeights radial_weights(const ConformalPatch& p, int j) {
  RadialWeights w;
  w.rings = radial_window(p, j);
  std::vector<double> nodes(w.rings.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = signed_radius(p, w.rings[i]);
  const auto c = detail::fd_weights(p.r[j], nodes, 2);
  w.d1 = c[1];
  w.d2 = c[2];
  return w;
}

struct PolarDerivs {
  std::vector<Vec3> xr, xt, xrr, xrt, xtt;
};

// Polar derivatives at every node off the center.
PolarDerivs polar_derivatives(const ConformalPatch& p) {
  const int K = p.sectors;
  const double dt = 2.0 * std::numbers::pi / K;
  const std::size_t n = p.size();
  PolarDerivs d;
  d.xr.assign(n, {});
  d.xt.assign(n, {});
  d.xrr.assign(n, {});
  d.xrt.assign(n, {});
  d.xtt.assign(n, {});
  std::vector<double> fx(K), fy(K), fz(K);
  for (int j = 0; j <= p.rings; ++j) {
    for (int k = 0; k < K; ++k) {
      const Vec3& v = p.x[p.node(j, k)];
      fx[k] = v.x;
      fy[k] = v.y;
      fz[k] = v.z;
    }
    for (int order : {1, 2}) {
      const auto gx = detail::periodic_derivative(fx, dt, order, kAngularHalf);
      const auto gy = detail::periodic_derivative(fy, dt, order, kAngularHalf);
      const auto gz = detail::periodic_derivative(fz, dt, order, kAngularHalf);
      auto& out = order == 1 ? d.xt : d.xtt;
      for (int k = 0; k < K; ++k) out[p.node(j, k)] = {gx[k], gy[k], gz[k]};
    }
  }
  const int first = p.disc ? 1 : 0;
  for (int j = first; j <= p.rings; ++j) {
    const auto w = radial_weights(p, j);
    for (int k = 0; k < K; ++k) {
      Vec3 r1, r2, rt;
      for (std::size_t i = 0; i < w.rings.size(); ++i) {
        const std::size_t m = reflected(p, w.rings[i], k);
        r1 += w.d1[i] * p.x[m];
        r2 += w.d2[i] * p.x[m];
        rt += w.d1[i] * d.xt[m];
      }
      const std::size_t m = p.node(j, k);
      d.xr[m] = r1;
      d.xrr[m] = r2;
      d.xrt[m] = rt;
    }
  }
  return d;
}

Vec3 future_unit_normal(const Vec3& a, const Vec3& b) {
  Vec3 n = lorentz_normalize(lorentz_cross(a, b));
  if (inner(n, n) >= 0.0) throw Error("conformal patch: tangent plane is not spacelike");
  if (n.z < 0.0) n = -n;
  return n;
}

void fill_second_fundamental_form(ConformalPatch& p) {
  const int K = p.sectors;
  const std::size_t n = p.size();
  p.h11.assign(n, 0.0);
  p.h12.assign(n, 0.0);
  p.h22.assign(n, 0.0);
  p.N.assign(n, {});
  const PolarDerivs d = polar_derivatives(p);
  const int first = p.disc ? 1 : 0;
  for (int j = first; j <= p.rings; ++j) {
    const double r = p.r[j];
    for (int k = 0; k < K; ++k) {
      const std::size_t m = p.node(j, k);
      const Vec3 N = future_unit_normal(d.xr[m], d.xt[m]);
      const double hrr = -inner(d.xrr[m], N);
      const double hrt = -inner(d.xrt[m], N) / r;
      const double htt = -inner(d.xtt[m], N) / (r * r);
      const double c = std::cos(p.theta[k]);
      const double s = std::sin(p.theta[k]);
      p.h11[m] = c * c * hrr - 2.0 * s * c * hrt + s * s * htt;
      p.h22[m] = s * s * hrr + 2.0 * s * c * hrt + c * c * htt;
      p.h12[m] = s * c * hrr + (c * c - s * s) * hrt - s * c * htt;
      p.N[m] = N;
    }
  }
  if (!p.disc) return;

  // Center of a disc: Cartesian differences along the rays at angles 0, pi/2 and pi/4.
  const double dr = p.r[1];
  const int half = kRadialPoints / 2;
  std::vector<double> nodes;
  for (int i = -half; i <= half; ++i) nodes.push_back(i * dr);
  const auto c = detail::fd_weights(0.0, nodes, 2);
  auto along = [&](int k, int order) {
    Vec3 acc;
    for (int i = -half; i <= half; ++i) acc += c[order][i + half] * p.x[reflected(p, i, k)];
    return acc;
  };
  const Vec3 xu = along(0, 1);
  const Vec3 xv = along(K / 4, 1);
  const Vec3 xuu = along(0, 2);
  const Vec3 xvv = along(K / 4, 2);
  const Vec3 xdd = along(K / 8, 2);
  const Vec3 xuv = xdd - 0.5 * (xuu + xvv);
  const Vec3 N = future_unit_normal(xu, xv);
  for (int k = 0; k < K; ++k) {
    const std::size_t m = p.node(0, k);
    p.h11[m] = -inner(xuu, N);
    p.h22[m] = -inner(xvv, N);
    p.h12[m] = -inner(xuv, N);
    p.N[m] = N;
  }
}

}  // namespace

RotationalSurface RotationalSurface::from_profile(const RotationalProfile& prof, double u_offset) {
  if (prof.dim() != 2) throw Error("RotationalSurface: conformal patches need a surface in L^3");
  return {[prof](double rho) { return prof.slope(rho); }, prof.rho0(), prof.rho1(), u_offset};
}

ConformalPatch conformal_parametrize_rotational(const RotationalSurface& s, int rings, int sectors) {
  if (rings < 8 || rings % 2 != 0) throw Error("conformal_parametrize_rotational: rings must be even and >= 8");
  if (sectors < 16 || sectors % 8 != 0)
    throw Error("conformal_parametrize_rotational: sectors must be a multiple of 8, at least 16");
  if (!(s.rho0 >= 0.0 && s.rho1 > s.rho0)) throw Error("conformal_parametrize_rotational: bad radius range");

  auto width = [&](double rho) {
    const double up = s.slope(rho);
    if (!(std::abs(up) < 1.0)) throw Error("conformal_parametrize_rotational: profile is not spacelike");
    return std::sqrt(1.0 - up * up);
  };
  const bool disc = s.rho0 == 0.0;
  // For a disc, log r = log(rho / rho1) + G(rho) where G collects the bounded
  // part of the integrand; 1 - sqrt(1 - s^2) is written as s^2 / (1 + sqrt(1 - s^2))
  // so that the integrand keeps full precision near the axis.
  auto excess = [&](double t) {
    if (t == 0.0) return 0.0;
    const double up = s.slope(t);
    return up * up / ((1.0 + width(t)) * t);
  };
  auto density = [&](double t) { return width(t) / t; };
  // Increment of log r between a and b, up to the closed-form log(b / a) part for a disc.
  auto piece = [&](double a, double b) { return disc ? -integrate(excess, a, b) : integrate(density, a, b); };
  const double defect = disc ? integrate(excess, 0.0, s.rho1) : 0.0;

  ConformalPatch p;
  p.disc = disc;
  p.rings = rings;
  p.sectors = sectors;
  const double r_min = disc ? 0.0 : std::exp(-integrate(density, s.rho0, s.rho1));
  p.r.resize(rings + 1);
  for (int j = 0; j <= rings; ++j) p.r[j] = r_min + (1.0 - r_min) * j / rings;
  p.r[rings] = 1.0;
  p.theta.resize(sectors);
  for (int k = 0; k < sectors; ++k) p.theta[k] = 2.0 * std::numbers::pi * k / sectors;

  // Invert ring by ring from the boundary inwards, so each evaluation only
  // integrates across one ring gap. `known` holds log r (disc: its bounded part G) at rho[j + 1].
  std::vector<double> rho(rings + 1);
  rho[0] = s.rho0;
  rho[rings] = s.rho1;
  double known = 0.0;
  for (int j = rings - 1; j >= 1; --j) {
    const double target = std::log(p.r[j]);
    const double outer = rho[j + 1];
    auto f = [&](double t) {
      const double inc = piece(t, outer);
      return disc ? std::log(t / s.rho1) + known - inc - target : known - inc - target;
    };
    double lo = disc ? s.rho1 * p.r[j] * std::exp(-defect) : s.rho0;
    double hi = disc ? std::min(s.rho1 * p.r[j], outer) : outer;
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) {
      rho[j] = lo;
    } else if (fhi == 0.0) {
      rho[j] = hi;
    } else {
      if (flo * fhi > 0.0) throw Error("conformal_parametrize_rotational: radius not bracketed");
      std::uintmax_t iters = 200;
      const auto root = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                          boost::math::tools::eps_tolerance<double>(50), iters);
      rho[j] = 0.5 * (root.first + root.second);
    }
    known -= piece(rho[j], outer);
  }

  std::vector<double> u(rings + 1, s.u_offset);
  for (int j = 1; j <= rings; ++j) u[j] = u[j - 1] + integrate(s.slope, rho[j - 1], rho[j]);

  p.E.resize(rings + 1);
  for (int j = 0; j <= rings; ++j) p.E[j] = (disc && j == 0) ? s.rho1 * std::exp(-defect) : rho[j] / p.r[j];

  p.x.resize(static_cast<std::size_t>(rings + 1) * sectors);
  for (int j = 0; j <= rings; ++j)
    for (int k = 0; k < sectors; ++k)
      p.x[p.node(j, k)] = {rho[j] * std::cos(p.theta[k]), rho[j] * std::sin(p.theta[k]), u[j]};
  fill_second_fundamental_form(p);
  return p;
}

ConformalPatch conformal_parametrize_rotational(const RotationalProfile& prof, int rings, int sectors,
                                                double u_offset) {
  return conformal_parametrize_rotational(RotationalSurface::from_profile(prof, u_offset), rings, sectors);
}

double conformality_residual(const ConformalPatch& p) {
  const PolarDerivs d = polar_derivatives(p);
  double worst = 0.0;
  const int first = p.disc ? 1 : 0;
  for (int j = first; j <= p.rings; ++j) {
    const double r = p.r[j];
    const double e2 = p.E[j] * p.E[j];
    for (int k = 0; k < p.sectors; ++k) {
      const std::size_t m = p.node(j, k);
      const double guu = inner(d.xr[m], d.xr[m]);
      const double gvv = inner(d.xt[m], d.xt[m]) / (r * r);
      const double guv = inner(d.xr[m], d.xt[m]) / r;
      worst = std::max({worst, std::abs(guu - gvv) / e2, std::abs(guv) / e2});
    }
  }
  return worst;
}

double patch_area(const ConformalPatch& p) {
  // Composite Simpson in r of E^2 r; the angular integral is exact for a rotational patch.
  double acc = 0.0;
  const double h = p.r[1] - p.r[0];
  for (int j = 0; j <= p.rings; ++j) {
    const double w = (j == 0 || j == p.rings) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    acc += w * p.E[j] * p.E[j] * p.r[j];
  }
  return 2.0 * std::numbers::pi * acc * h / 3.0;
}

HopfField hopf_differential(const ConformalPatch& p) {
  if (p.h11.size() != p.size()) throw Error("hopf_differential: patch has no second fundamental form");
  HopfField f;
  f.patch = &p;
  f.phi.resize(p.size());
  for (std::size_t m = 0; m < p.size(); ++m) f.phi[m] = {p.h11[m] - p.h22[m], -2.0 * p.h12[m]};
  return f;
}

double HopfField::max_abs() const {
  double m = 0.0;
  for (const auto& z : phi) m = std::max(m, std::abs(z));
  return m;
}

double HopfField::min_abs_interior() const {
  double m = std::numeric_limits<double>::infinity();
  for (int j = 1; j < patch->rings; ++j)
    for (int k = 0; k < patch->sectors; ++k) m = std::min(m, std::abs(phi[patch->node(j, k)]));
  return m;
}

double holomorphicity_residual(const HopfField& f) {
  const ConformalPatch& p = *f.patch;
  const int K = p.sectors;
  const double dt = 2.0 * std::numbers::pi / K;
  double worst = 0.0;
  for (int j = 1; j < p.rings; ++j) {
    const double r = p.r[j];
    const double dr = p.r[j + 1] - p.r[j - 1];
    for (int k = 0; k < K; ++k) {
      const auto phi_r = (f.phi[p.node(j + 1, k)] - f.phi[p.node(j - 1, k)]) / dr;
      const auto phi_t = (f.phi[p.node(j, (k + 1) % K)] - f.phi[p.node(j, (k + K - 1) % K)]) / (2.0 * dt);
      const double c = std::cos(p.theta[k]);
      const double s = std::sin(p.theta[k]);
      const auto phi_u = c * phi_r - (s / r) * phi_t;
      const auto phi_v = s * phi_r + (c / r) * phi_t;
      const auto dzbar = 0.5 * (phi_u + std::complex<double>(0.0, 1.0) * phi_v);
      worst = std::max(worst, std::abs(dzbar));
    }
  }
  return worst;
}

std::vector<double> imz2phi(const HopfField& f) {
  const ConformalPatch& p = *f.patch;
  std::vector<double> out(p.size());
  for (int j = 0; j <= p.rings; ++j)
    for (int k = 0; k < p.sectors; ++k) {
      const std::size_t m = p.node(j, k);
      const auto z = std::polar(p.r[j], p.theta[k]);
      out[m] = (z * z * f.phi[m]).imag();
    }
  return out;
}

std::vector<double> boundary_imz2phi(const HopfField& f) {
  const ConformalPatch& p = *f.patch;
  const auto all = imz2phi(f);
  const auto first = all.begin() + static_cast<std::ptrdiff_t>(p.node(p.rings, 0));
  return {first, first + p.sectors};
}

UmbilicityDiagnostic umbilicity_diagnostic(const HopfField& f) {
  const ConformalPatch& p = *f.patch;
  std::vector<double> logE(p.rings + 1);
  for (int j = 0; j <= p.rings; ++j) logE[j] = std::log(p.E[j]);
  UmbilicityDiagnostic d;
  double H_sum = 0.0;
  std::size_t count = 0;
  std::vector<double> Hs;
  for (int j = 1; j < p.rings; ++j) {
    const auto w = radial_weights(p, j);
    double l1 = 0.0, l2 = 0.0;
    for (std::size_t i = 0; i < w.rings.size(); ++i) {
      const double v = logE[std::abs(w.rings[i])];
      l1 += w.d1[i] * v;
      l2 += w.d2[i] * v;
    }
    const double e2 = p.E[j] * p.E[j];
    const double K = -(l2 + l1 / p.r[j]) / e2;
    for (int k = 0; k < p.sectors; ++k) {
      const std::size_t m = p.node(j, k);
      const double H = (p.h11[m] + p.h22[m]) / (2.0 * e2);
      const double phi2 = std::norm(f.phi[m]);
      d.max_abs_phi2 = std::max(d.max_abs_phi2, phi2);
      d.derived_error = std::max(d.derived_error, std::abs(phi2 - 4.0 * e2 * e2 * (H * H + K)));
      d.alt_error = std::max(d.alt_error, std::abs(phi2 - (H * H + K) / (4.0 * e2)));
      H_sum += H;
      Hs.push_back(H);
      ++count;
    }
  }
  const double H_mean = count ? H_sum / static_cast<double>(count) : 0.0;
  for (double H : Hs) d.max_H_spread = std::max(d.max_H_spread, std::abs(H - H_mean));
  return d;
}

std::string hopf_csv(const HopfField& f) {
  const ConformalPatch& p = *f.patch;
  const auto im = imz2phi(f);
  std::ostringstream out;
  out.precision(17);
  out << "r,theta,re_phi,im_phi,im_z2phi\n";
  for (int j = 0; j <= p.rings; ++j)
    for (int k = 0; k < p.sectors; ++k) {
      const std::size_t m = p.node(j, k);
      out << p.r[j] << "," << p.theta[k] << "," << f.phi[m].real() << "," << f.phi[m].imag() << "," << im[m]
          << "\n";
    }
  return out.str();
}

}  // namespace lcap
