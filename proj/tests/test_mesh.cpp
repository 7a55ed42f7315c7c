#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lcap/mesh.hpp"

using namespace lcap;

namespace {

constexpr double kPi = std::numbers::pi;

double cap_height(double x, double y) { return std::sqrt(1.0 + x * x + y * y) - std::sqrt(2.0); }

SpacelikeGraph cap(int n) { return SpacelikeGraph::build(Domain::disc(1.0, n), cap_height, Pseudosphere{}); }

double max_interior_H_error(const SpacelikeGraph& g, double H) {
  const auto h = mean_curvature(g);
  double e = 0.0;
  for (int v : g.interior()) e = std::max(e, std::abs(h[v] - H));
  return e;
}

}  // namespace

TEST(Mesh, DomainCountsAndIndexing) {
  const auto d = Domain::disc(1.0, 8);
  EXPECT_EQ(d.rings, 8);
  EXPECT_EQ(d.sectors, 16);
  EXPECT_EQ(d.vertex_count(), 1 + 8 * 16);
  EXPECT_EQ(d.index(0, 0), 0);
  EXPECT_DOUBLE_EQ(d.ring_radius(8), 1.0);

  const auto topo = make_topology(d);
  EXPECT_EQ(topo->tris.size(), 16u + 2u * 7u * 16u);
  EXPECT_EQ(topo->loops.size(), 1u);
  EXPECT_EQ(topo->loops.front().size(), 16u);
  EXPECT_EQ(topo->interior.size(), static_cast<std::size_t>(1 + 7 * 16));

  const auto a = make_topology(Domain::annulus(0.3, 1.0, 8));
  EXPECT_EQ(a->loops.size(), 2u);
}

TEST(Mesh, RejectsNonSpacelikeGraphs) {
  EXPECT_THROW(SpacelikeGraph::build(Domain::disc(1.0, 8), [](double x, double) { return 1.2 * x; }),
               std::exception);
  EXPECT_NO_THROW(SpacelikeGraph::build(Domain::disc(1.0, 8), [](double x, double) { return 0.9 * x; }));
}

TEST(Mesh, DualMassesTileThePlanarPolygon) {
  const auto g = cap(16);
  const auto m = dual_masses(g);
  double total = 0.0;
  for (double v : m) total += v;
  const int S = g.domain().sectors;
  const double polygon = 0.5 * S * std::sin(2 * kPi / S);
  EXPECT_NEAR(total, polygon, 1e-12);
}

TEST(Mesh, CapAreaConverges) {
  const double exact = 2 * kPi * (std::sqrt(2.0) - 1.0);
  const double e16 = std::abs(area(cap(16)) - exact);
  const double e32 = std::abs(area(cap(32)) - exact);
  EXPECT_LT(e32, e16);
  EXPECT_GT(std::log2(e16 / e32), 1.7);
}

TEST(Mesh, CapMeanCurvatureConvergesToOne) {
  const double e16 = max_interior_H_error(cap(16), 1.0);
  const double e32 = max_interior_H_error(cap(32), 1.0);
  EXPECT_LT(e32, 1e-2);
  EXPECT_GT(std::log2(e16 / e32), 1.5);
}

TEST(Mesh, FlatDiscHasZeroCurvature) {
  const auto g = SpacelikeGraph::build(Domain::disc(1.0, 12), [](double, double) { return 0.25; });
  for (int v : g.interior()) EXPECT_NEAR(mean_curvature(g)[v], 0.0, 1e-12);
  EXPECT_NEAR(algebraic_volume(g), 0.25 * 0.5 * 24 * std::sin(2 * kPi / 24), 1e-12);
}

TEST(Mesh, NormalsAreUnitFutureTimelike) {
  const auto g = cap(24);
  for (const Vec3& n : future_normal(g)) {
    EXPECT_NEAR(inner(n, n), -1.0, 1e-12);
    EXPECT_GT(n.z, 0.0);
  }
}

TEST(Mesh, CapNormalsMatchThePositionVector) {
  // On H^2_+(p,1) the future unit normal is x - p.
  const auto g = cap(32);
  const auto N = future_normal(g);
  double err = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    const Vec3 x = g.positions()[i];
    const Vec3 ex{x.x, x.y, x.z + std::sqrt(2.0)};
    err = std::max(err, std::sqrt(dot(N[i] - ex, N[i] - ex)));
  }
  EXPECT_LT(err, 1e-2);
}

TEST(Mesh, BoundaryFramesSatisfyTheirRelations) {
  const auto g = cap(32);
  const auto frames = boundary_frames(g, Pseudosphere{});
  ASSERT_EQ(frames.size(), g.outer_loop().size());
  for (const auto& f : frames) {
    EXPECT_LT(f.invariant_error(), 1e-8);
    EXPECT_NEAR(inner(f.N, f.N_sigma), 1.0, 1e-3);
  }
}

TEST(Mesh, WettedAreaOfAHorizontalSection) {
  const double h = 0.4;
  const auto g = SpacelikeGraph::build(Domain::disc(std::sqrt(1 + h * h), 32), [=](double, double) { return h; },
                                       Pseudosphere{});
  EXPECT_NEAR(std::abs(wetted_area(g, Pseudosphere{})), 2 * kPi * h, 1e-12);
}

TEST(Mesh, WithPositionsRevalidates) {
  const auto g = cap(8);
  std::vector<Vec3> pos(g.positions().begin(), g.positions().end());
  pos[0].z += 5.0;
  EXPECT_THROW(g.with_positions(pos), std::exception);
}
