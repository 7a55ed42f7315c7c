#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "lcap/umbilic.hpp"

using namespace lcap;

namespace {

constexpr double kPi = std::numbers::pi;

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

std::vector<double> uniform_angles(int K) {
  std::vector<double> phi(K);
  for (int k = 0; k < K; ++k) phi[k] = 2 * kPi * k / K;
  return phi;
}

}  // namespace

TEST(Umbilic, GeodesicParamStaysOnPseudosphere) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> T(-2, 2), P(0, 2 * kPi);
  for (int k = 0; k < 200; ++k) {
    const double t = T(rng), phi = P(rng);
    const Vec3 q{std::cos(phi), std::sin(phi), 0};
    const Vec3 x = geodesic_param(t, q);
    EXPECT_NEAR(inner(x, x), 1.0, 1e-12 * std::cosh(t) * std::cosh(t));
    const Pseudosphere S{{0.3, -0.2, 0.5}, 1.7};
    const Vec3 y = geodesic_param(S, t, q) - S.p;
    EXPECT_NEAR(inner(y, y), S.r * S.r, 1e-11 * std::cosh(t) * std::cosh(t));
  }
}

TEST(Umbilic, ProjectionLandsOnWaistAndFixesIt) {
  const WaistCircle C{};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> T(-1.5, 1.5), P(0, 2 * kPi);
  for (int k = 0; k < 200; ++k) {
    const double t = T(rng), phi = P(rng);
    const Vec3 q{std::cos(phi), std::sin(phi), 0};
    const Vec3 pq = project_pi(geodesic_param(t, q));
    EXPECT_TRUE(C.contains(pq));
    EXPECT_NEAR(pq.x, q.x, 1e-12);
    EXPECT_NEAR(pq.y, q.y, 1e-12);
    const Vec3 fixed = project_pi(q);
    EXPECT_NEAR(fixed.x, q.x, 1e-15);
    EXPECT_NEAR(fixed.y, q.y, 1e-15);
  }
}

TEST(Umbilic, ProjectionDifferentialMatchesFiniteDifferences) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> T(-1.0, 1.0), P(0, 2 * kPi), V(-1, 1);
  for (int k = 0; k < 100; ++k) {
    const Vec3 q{std::cos(P(rng)), std::sin(P(rng)), 0};
    const Vec3 p = geodesic_param(T(rng), lorentz_normalize(Vec3{q.x, q.y, 0}));
    const Vec3 w{V(rng), V(rng), V(rng)};
    const Vec3 v = w - p * inner(w, p);  // tangent, since <p,p> = 1
    const double h = 1e-6;
    const Vec3 fd = (project_pi(p + v * h) - project_pi(p - v * h)) * (0.5 / h);
    const Vec3 ex = project_pi_differential(p, v);
    EXPECT_NEAR(fd.x, ex.x, 1e-8);
    EXPECT_NEAR(fd.y, ex.y, 1e-8);
    EXPECT_NEAR(fd.z, ex.z, 1e-8);
  }
}

TEST(Umbilic, ProjectionNormIdentity) {
  // <dpi(v),dpi(v)> (1 + <p,a>^2) = <v,v> + <v,a>^2 / (1 + <p,a>^2) for v tangent at p.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> T(-1.2, 1.2), P(0, 2 * kPi), V(-1, 1);
  for (int k = 0; k < 300; ++k) {
    const double phi = P(rng);
    const Vec3 p = geodesic_param(T(rng), {std::cos(phi), std::sin(phi), 0});
    const Vec3 w{V(rng), V(rng), V(rng)};
    const Vec3 v = w - p * inner(w, p);
    const Vec3 d = project_pi_differential(p, v);
    const double pa = inner(p, kTimeAxis), va = inner(v, kTimeAxis);
    const double lhs = inner(d, d) * (1 + pa * pa);
    EXPECT_NEAR(lhs, inner(v, v) + va * va / (1 + pa * pa), 1e-12 * (1 + dot(v, v)));
  }
}

TEST(Umbilic, ProjectionNormIdentityWithoutVerticalTerm) {
  // For <v,a> = 0 the vertical term drops and <dpi(v),dpi(v)> (1 + <p,a>^2) = <v,v>.
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> T(-1.2, 1.2), P(0, 2 * kPi), V(-1, 1);
  for (int k = 0; k < 300; ++k) {
    const double phi = P(rng);
    const Vec3 p = geodesic_param(T(rng), {std::cos(phi), std::sin(phi), 0});
    const Vec3 v = Vec3{-p.y, p.x, 0} * V(rng);  // horizontal and tangent
    const Vec3 d = project_pi_differential(p, v);
    const double pa = inner(p, kTimeAxis);
    EXPECT_NEAR(inner(d, d) * (1 + pa * pa), inner(v, v), 1e-12);
  }
}

TEST(Umbilic, AnalyticContactAngles) {
  EXPECT_NEAR(analytic_contact_angle(SpacelikePlane::make({0, 0, 0.5}, {0, 0, 1})), -0.5, 1e-15);
  // H^2_+((0,0,c),r) with c = -sqrt(2), r = 1 meets S^2_1 at the reference value 1.
  EXPECT_NEAR(analytic_contact_angle(HyperbolicPlane{{0, 0, -std::sqrt(2.0)}, 1.0}), 1.0, 1e-14);
  EXPECT_NEAR(cap_boundary_height(-std::sqrt(2.0), 1.0), 0.0, 1e-15);
}

TEST(Umbilic, IntersectionPointsLieOnBothSurfaces) {
  const std::vector<SupportSurface> supports = {
      SpacelikePlane::make({0, 0, 0.4}, {0.2, 0.1, 1.0}),
      HyperbolicPlane{{0.1, 0, -1.5}, 1.1},
      HyperbolicPlane{{0, 0, -std::sqrt(2.0)}, 1.0},
  };
  const Pseudosphere S{};
  for (const auto& M : supports) {
    const auto pts = support_intersection(M, 64);
    ASSERT_EQ(pts.size(), 64u);
    for (const auto& x : pts) {
      EXPECT_TRUE(on_surface(M, x, 1e-10)) << kind_name(M);
      EXPECT_TRUE(on_surface(S, x, 1e-10)) << kind_name(M);
    }
  }
}

TEST(Umbilic, SurfaceNormalsHaveTheRightCausalCharacter) {
  const Vec3 x = geodesic_param(0.3, {0.6, 0.8, 0});
  const Vec3 n = surface_normal(Pseudosphere{}, x);
  EXPECT_NEAR(inner(n, n), 1.0, 1e-12);
  const HyperbolicPlane Hp{{0, 0, 0}, 2.0};
  const Vec3 y{0.5, 0.2, std::sqrt(4.0 + 0.29)};
  const Vec3 m = surface_normal(Hp, y);
  EXPECT_NEAR(inner(m, m), -1.0, 1e-12);
  EXPECT_GT(m.z, 0.0);
  EXPECT_EQ(support_sign(Pseudosphere{}).value, +1);
  EXPECT_EQ(support_sign(Hp).value, -1);
  EXPECT_NEAR(*mean_curvature_analytic(Hp), 0.5, 1e-15);
  EXPECT_FALSE(mean_curvature_analytic(Pseudosphere{}).has_value());
}

TEST(Umbilic, ChartRoundTrip) {
  const std::vector<SupportSurface> supports = {
      Pseudosphere{{0.2, 0.1, 0}, 1.3},
      SpacelikePlane::make({0, 0, 0.2}, {0.1, 0.2, 1}),
      HyperbolicPlane{{0, 0, -1}, 0.7},
  };
  for (const auto& s : supports) {
    const SupportChart ch(s);
    for (double q : {0.2, 0.5, 0.9}) {
      for (double phi : {0.0, 1.0, 4.0}) {
        const Vec3 x = ch.position(q, phi);
        EXPECT_TRUE(on_surface(s, x, 1e-10)) << kind_name(s);
        EXPECT_NEAR(ch.coordinate(x), q, 1e-11) << kind_name(s);
        EXPECT_NEAR(std::remainder(ch.angle(x) - phi, 2 * kPi), 0.0, 1e-11) << kind_name(s);
      }
    }
  }
}

TEST(Umbilic, WettedAreaClosedForms) {
  const int K = 256;
  const auto phi = uniform_angles(K);
  {
    const SupportChart ch(Pseudosphere{});
    const double t = 0.4;
    const std::vector<double> q(K, t);
    EXPECT_NEAR(std::abs(ch.wetted_area(q, phi)), 2 * kPi * std::sinh(t), 1e-10);
  }
  {
    const SupportChart ch(SpacelikePlane::make({0, 0, 0}, {0, 0, 1}));
    const std::vector<double> q(K, 0.8);
    EXPECT_NEAR(ch.wetted_area(q, phi), kPi * 0.64, 1e-3);
  }
  {
    const double r = 0.7, R = 0.9;
    const SupportChart ch(HyperbolicPlane{{0, 0, 0}, r});
    const std::vector<double> q(K, R);
    EXPECT_NEAR(ch.wetted_area(q, phi), 2 * kPi * r * (std::sqrt(r * r + R * R) - r), 1e-3);
  }
}

TEST(Umbilic, WettedGradientMatchesFiniteDifferences) {
  const int K = 32;
  const auto phi = uniform_angles(K);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(-0.05, 0.05);
  const std::vector<SupportSurface> supports = {Pseudosphere{}, SpacelikePlane::make({0, 0, 0}, {0.1, 0, 1}),
                                                HyperbolicPlane{{0, 0, -1.2}, 0.8}};
  for (const auto& s : supports) {
    const SupportChart ch(s);
    std::vector<double> q(K);
    for (auto& v : q) v = 0.5 + U(rng);
    const auto g = ch.wetted_gradient(q, phi);
    const auto gv = ch.support_volume_gradient(q, phi);
    for (int k = 0; k < K; k += 5) {
      auto qp = q, qm = q;
      const double h = 1e-6;
      qp[k] += h;
      qm[k] -= h;
      EXPECT_NEAR(g[k], (ch.wetted_area(qp, phi) - ch.wetted_area(qm, phi)) / (2 * h), 1e-7) << kind_name(s);
      EXPECT_NEAR(gv[k], (ch.support_volume(qp, phi) - ch.support_volume(qm, phi)) / (2 * h), 1e-7)
          << kind_name(s);
    }
  }
}

TEST(Umbilic, ConfigRoundTrip) {
  const std::vector<SupportSurface> supports = {Pseudosphere{{0.5, 0, 1}, 2.0},
                                                SpacelikePlane::make({0, 0, 1}, {0, 0.3, 1}),
                                                HyperbolicPlane{{0, 0, 2}, 1.5, Branch::Lower}};
  for (const auto& s : supports) {
    const auto back = support_from_config(parse_kv(to_config(s)));
    EXPECT_EQ(kind_name(back), kind_name(s));
    // Values survive up to the rounding of one extra normalization.
    const auto a = parse_kv(to_config(s)), b = parse_kv(to_config(back));
    ASSERT_EQ(a.size(), b.size());
    for (const auto& [key, value] : a) {
      if (key == "center" || key == "normal") {
        std::istringstream ia(value), ib(b.at(key));
        for (int i = 0; i < 3; ++i) {
          double x, y;
          char comma;
          ia >> x;
          ib >> y;
          EXPECT_NEAR(x, y, 1e-15) << key;
          if (i < 2) ia >> comma, ib >> comma;
        }
      } else {
        EXPECT_EQ(value, b.at(key)) << key;
      }
    }
  }
  EXPECT_THROW(support_from_config({{"kind", "torus"}}), std::exception);
  EXPECT_THROW(support_from_config({{"kind", "hyperbolic"}, {"radius", "-1"}}), std::exception);
}
