#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lcap/hopf.hpp"
#include "stencil.hpp"

using namespace lcap;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(Stencil, WeightsAreExactOnPolynomials) {
  const std::vector<double> nodes = {-0.3, 0.0, 0.2, 0.5, 0.9, 1.4};
  const double x0 = 0.35;
  const auto w = detail::fd_weights(x0, nodes, 3);
  for (int p = 0; p <= 5; ++p) {
    for (int m = 0; m <= 3; ++m) {
      double approx = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) approx += w[m][i] * std::pow(nodes[i], p);
      double exact = 0.0;
      if (p >= m) {
        double fall = 1.0;
        for (int k = 0; k < m; ++k) fall *= p - k;
        exact = fall * std::pow(x0, p - m);
      }
      EXPECT_NEAR(approx, exact, 1e-10) << "p=" << p << " m=" << m;
    }
  }
}

TEST(Stencil, PeriodicDerivativeIsHighOrder) {
  auto err = [](int K) {
    std::vector<double> f(K);
    const double h = 2 * kPi / K;
    for (int k = 0; k < K; ++k) f[k] = std::exp(std::sin(k * h));
    const auto d = detail::periodic_derivative(f, h, 1);
    double e = 0.0;
    for (int k = 0; k < K; ++k) e = std::max(e, std::abs(d[k] - std::cos(k * h) * f[k]));
    return e;
  };
  EXPECT_GT(std::log2(err(32) / err(64)), 7.0);
}

TEST(Hopf, CapHasVanishingDifferential) {
  const RotationalProfile prof(1.0, 0.0, 0.0, 1.0);
  const auto p = conformal_parametrize_rotational(prof, 64, 128, 1.0 - std::sqrt(2.0));
  EXPECT_LT(conformality_residual(p), 1e-8);
  EXPECT_NEAR(patch_area(p), 2 * kPi * (std::sqrt(2.0) - 1.0), 1e-6);
  const auto f = hopf_differential(p);
  EXPECT_LT(f.max_abs(), 1e-5);
  for (double v : boundary_imz2phi(f)) EXPECT_LT(std::abs(v), 1e-8);
}

TEST(Hopf, AnnulusIsHolomorphicButNotUmbilic) {
  const RotationalProfile prof(1.0, 0.5, 0.3, 1.2);
  const auto p = conformal_parametrize_rotational(prof, 64, 128);
  EXPECT_FALSE(p.disc);
  EXPECT_LT(conformality_residual(p), 1e-7);
  const auto f = hopf_differential(p);
  EXPECT_GT(f.min_abs_interior(), 1e-2);
  EXPECT_LT(holomorphicity_residual(f), 5e-2);
  const auto u = umbilicity_diagnostic(f);
  EXPECT_LT(u.derived_error, 1e-3 * std::max(1.0, u.max_abs_phi2));
  EXPECT_LT(u.max_H_spread, 1e-3);
}

TEST(Hopf, HolomorphicityResidualConvergesAtSecondOrder) {
  const RotationalProfile prof(1.0, 0.5, 0.3, 1.2);
  auto res = [&](int rings) {
    const auto p = conformal_parametrize_rotational(prof, rings, 2 * rings);
    return holomorphicity_residual(hopf_differential(p));
  };
  EXPECT_GT(std::log2(res(32) / res(64)), 1.7);
}

TEST(Hopf, NonConstantCurvatureIsNotHolomorphic) {
  RotationalSurface s;
  s.slope = [](double rho) { return 0.3 * rho * rho; };
  s.rho0 = 0.3;
  s.rho1 = 1.2;
  const auto p32 = conformal_parametrize_rotational(s, 32, 64);
  const auto p64 = conformal_parametrize_rotational(s, 64, 128);
  const auto f32 = hopf_differential(p32);
  const auto f64 = hopf_differential(p64);
  const double r32 = holomorphicity_residual(f32), r64 = holomorphicity_residual(f64);
  EXPECT_GT(r64, 0.1);
  EXPECT_GT(r64, 0.5 * r32);
}

TEST(Hopf, RejectsBadSectorCounts) {
  const RotationalProfile prof(1.0, 0.0, 0.0, 1.0);
  EXPECT_THROW(conformal_parametrize_rotational(prof, 16, 30), std::exception);
}

TEST(Hopf, CsvHasOneRowPerNode) {
  const RotationalProfile prof(1.0, 0.5, 0.3, 1.2);
  const auto p = conformal_parametrize_rotational(prof, 8, 16);
  const auto f = hopf_differential(p);
  const auto csv = hopf_csv(f);
  const auto rows = std::count(csv.begin(), csv.end(), '\n');
  EXPECT_EQ(static_cast<std::size_t>(rows), p.size() + 1);
}
