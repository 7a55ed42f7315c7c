#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lcap/lorentz.hpp"

using namespace lcap;

namespace {

Vec3 random_vec(std::mt19937_64& rng, double scale = 2.0) {
  std::uniform_real_distribution<double> U(-scale, scale);
  return {U(rng), U(rng), U(rng)};
}

}  // namespace

TEST(Lorentz, InnerProductSignature) {
  const LorentzVector e1{1, 0, 0}, e2{0, 1, 0}, a = LorentzVector::time_axis(3);
  EXPECT_DOUBLE_EQ(minkowski_inner(e1, e1), 1.0);
  EXPECT_DOUBLE_EQ(minkowski_inner(e2, e2), 1.0);
  EXPECT_DOUBLE_EQ(minkowski_inner(a, a), -1.0);
  EXPECT_DOUBLE_EQ(minkowski_inner(e1, a), 0.0);
  EXPECT_THROW(minkowski_inner(e1, LorentzVector{1, 0}), std::exception);
}

TEST(Lorentz, InnerProductIsSymmetricAndBilinear) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const Vec3 u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
    const double s = std::uniform_real_distribution<double>(-3, 3)(rng);
    EXPECT_DOUBLE_EQ(inner(u, v), inner(v, u));
    EXPECT_NEAR(inner(u * s + v, w), s * inner(u, w) + inner(v, w), 1e-12);
    EXPECT_NEAR(minkowski_inner(to_lorentz(u), to_lorentz(v)), inner(u, v), 1e-14);
  }
}

TEST(Lorentz, CausalCharacter) {
  EXPECT_EQ(causal_character(LorentzVector{1, 0, 0}), Causal::Spacelike);
  EXPECT_EQ(causal_character(LorentzVector{0, 0, 1}), Causal::Timelike);
  EXPECT_EQ(causal_character(LorentzVector{1, 0, 1}), Causal::Lightlike);
  EXPECT_EQ(causal_character(LorentzVector{0.6, 0.8, 1.0}), Causal::Lightlike);
  EXPECT_THROW(causal_character(LorentzVector{0, 0, 0}), std::exception);
}

TEST(Lorentz, FutureDirected) {
  // <v,a> < 0 means v points up in x3.
  EXPECT_TRUE(is_future_directed(LorentzVector{0.2, 0.1, 1.0}));
  EXPECT_FALSE(is_future_directed(LorentzVector{0.2, 0.1, -1.0}));
  EXPECT_THROW(is_future_directed(LorentzVector{1.0, 0.0, 0.5}), std::exception);
}

TEST(Lorentz, LorentzCrossIsOrthogonalAndMatchesDeterminant) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    const Vec3 u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
    const Vec3 n = lorentz_cross(u, v);
    const double scale = 1.0 + dot(u, u) * dot(v, v);
    EXPECT_NEAR(inner(n, u), 0.0, 1e-12 * scale);
    EXPECT_NEAR(inner(n, v), 0.0, 1e-12 * scale);
    EXPECT_NEAR(inner(n, w), det3(u, v, w), 1e-11 * scale * (1 + dot(w, w)));
  }
}

TEST(Lorentz, NormalizeGivesUnitLength) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 200; ++k) {
    const Vec3 v = random_vec(rng);
    if (std::abs(inner(v, v)) < 1e-3) continue;
    const Vec3 n = lorentz_normalize(v);
    EXPECT_NEAR(std::abs(inner(n, n)), 1.0, 1e-12);
  }
  EXPECT_THROW(lorentz_normalize(Vec3{1, 0, 1}), std::exception);
}

TEST(Lorentz, HyperbolicAngleBranches) {
  const double phi = 0.7;
  EXPECT_NEAR(hyperbolic_angle(std::sinh(phi), CausalSign::timelike_support()), phi, 1e-14);
  EXPECT_NEAR(hyperbolic_angle(-std::cosh(phi), CausalSign::spacelike_support()), phi, 1e-14);
  EXPECT_THROW(hyperbolic_angle(-0.5, CausalSign::spacelike_support()), std::exception);
}

TEST(Lorentz, FrameFromProjectionsRoundTrip) {
  // Timelike support: nu_S spacelike, N_S spacelike unit normal of the support.
  const Vec3 N_sigma{1, 0, 0}, nu_sigma{0, 0, 1};
  const double phi = 0.4;
  const Vec3 N_true{std::sinh(phi), 0, std::cosh(phi)};
  const double s = inner(N_true, nu_sigma), m = inner(N_true, N_sigma);
  const auto fr = frame_from_projections(s, m, to_lorentz(nu_sigma), to_lorentz(N_sigma), CausalSign::timelike_support());
  const Vec3 N = to_vec3(fr.N);
  EXPECT_NEAR(N.x, N_true.x, 1e-12);
  EXPECT_NEAR(N.z, N_true.z, 1e-12);
  EXPECT_NEAR(minkowski_inner(fr.N, fr.nu), 0.0, 1e-12);
  EXPECT_NEAR(minkowski_inner(fr.nu, fr.nu), 1.0, 1e-12);
}
