#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lcap/variational.hpp"

using namespace lcap;

namespace {

SpacelikeGraph bumped_cap(int n, double bump) {
  return SpacelikeGraph::build(
      Domain::disc(1.0, n),
      [=](double x, double y) { return std::sqrt(1 + x * x + y * y) - std::sqrt(2.0) + bump * (1 - x * x - y * y) * y; },
      Pseudosphere{});
}

SpacelikeGraph exact_cap(int n) { return bumped_cap(n, 0.0); }

double central(const std::function<double(double)>& f, double h = 1e-6) { return (f(h) - f(-h)) / (2 * h); }

}  // namespace

TEST(Variational, EnergyAddsWettedArea) {
  const auto g = exact_cap(16);
  const auto e = energy(g, Pseudosphere{}, 0.5);
  EXPECT_NEAR(e.energy, e.surface_area + 0.5 * e.wetted_area, 1e-15);
  EXPECT_NEAR(e.surface_area, area(g), 1e-15);
}

TEST(Variational, DofRoundTrip) {
  const auto g = bumped_cap(12, 0.05);
  const DofModel m(g, Pseudosphere{});
  EXPECT_EQ(m.size(), g.vertex_count());
  EXPECT_EQ(m.boundary_count(), g.outer_loop().size());
  const auto x = m.values(g);
  const auto back = m.graph(x);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    EXPECT_NEAR(back.positions()[i].x, g.positions()[i].x, 1e-12);
    EXPECT_NEAR(back.positions()[i].y, g.positions()[i].y, 1e-12);
    EXPECT_NEAR(back.positions()[i].z, g.positions()[i].z, 1e-12);
  }
}

TEST(Variational, DiscreteGradientsMatchFiniteDifferences) {
  for (const SupportSurface& s : std::vector<SupportSurface>{Pseudosphere{}}) {
    const auto g = bumped_cap(10, 0.04);
    const DofModel m(g, s);
    const auto x = m.values(g);
    const auto G = discrete_gradients(m, x);
    for (std::size_t d = 0; d < m.size(); d += 7) {
      auto at = [&](double t) {
        auto y = x;
        y[d] += t;
        return discrete_gradients(m, y);
      };
      EXPECT_NEAR(G.dA[d], central([&](double t) { return at(t).area; }), 1e-7) << d;
      EXPECT_NEAR(G.dV[d], central([&](double t) { return at(t).volume; }), 1e-7) << d;
      EXPECT_NEAR(G.dW[d], central([&](double t) { return at(t).wetted; }), 1e-7) << d;
    }
  }
}

TEST(Variational, VolumeInDofSpaceIsTheEnclosedVolume) {
  const auto g = bumped_cap(10, 0.04);
  const DofModel m(g, Pseudosphere{});
  const auto G = discrete_gradients(m, m.values(g));
  EXPECT_NEAR(G.volume, enclosed_volume(g, Pseudosphere{}), 1e-13);
}

class RandomField : public ::testing::TestWithParam<int> {};

TEST_P(RandomField, FirstVariationsMatchDeformation) {
  const int seed = GetParam();
  const auto g = bumped_cap(14, 0.03);
  const SupportSurface s = Pseudosphere{};
  const double lambda = 0.8;
  const auto xi = random_admissible_field(g, s, seed);
  const double dE = central([&](double t) { return energy(deform(g, s, xi, t), s, lambda).energy; });
  const double dV = central([&](double t) { return enclosed_volume(deform(g, s, xi, t), s); });
  EXPECT_NEAR(first_variation_energy(g, s, lambda, xi), dE, 1e-6 * (1 + std::abs(dE)));
  EXPECT_NEAR(first_variation_volume(g, xi), dV, 1e-6 * (1 + std::abs(dV)));
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomField, ::testing::Range(0, 12));

TEST(Variational, RejectsFieldsThatLeaveTheSupport) {
  const auto g = exact_cap(8);
  VariationField xi{std::vector<Vec3>(g.vertex_count(), Vec3{0, 0, 0})};
  const int b = g.outer_loop().front();
  xi.xi[b] = surface_normal(Pseudosphere{}, g.positions()[b]);
  EXPECT_THROW(first_variation_energy(g, Pseudosphere{}, 1.0, xi), std::exception);
}

TEST(Variational, ExactCapIsNearlyStationary) {
  const auto r = stationarity_report(exact_cap(32), Pseudosphere{});
  EXPECT_NEAR(r.H_mean, 1.0, 1e-2);
  EXPECT_NEAR(r.frame_angle_mean, 1.0, 1e-2);
  EXPECT_NEAR(lagrange_multiplier(r, 1e-1), -2.0, 2e-2);
  EXPECT_FALSE(report_csv(r).empty());
  EXPECT_FALSE(report_summary(r).empty());
}

TEST(Variational, LagrangeMultiplierThrowsOffStationarity) {
  const auto g = bumped_cap(16, 0.1);
  EXPECT_THROW(lagrange_multiplier(g, 1e-6), std::exception);
}
