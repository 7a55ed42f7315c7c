#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "lcap/kernels.hpp"
#include "lcap/mesh.hpp"

using namespace lcap;
using kernels::Exec;

namespace {

SpacelikeGraph wavy_disc(int n) {
  return SpacelikeGraph::build(Domain::disc(1.0, n), [](double x, double y) {
    return 0.3 * std::sin(2 * x) * std::cos(y) + 0.1 * x * y;
  });
}

template <class T>
bool bitwise_equal(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

}  // namespace

TEST(Kernels, SerialAndParallelAreBitwiseIdentical) {
  const auto g = wavy_disc(48);
  const auto pos = g.positions();
  const auto tris = g.triangles();
  const std::size_t T = tris.size();

  std::vector<kernels::AreaTerm> a1(T), a2(T);
  kernels::area_terms(pos, tris, a1, Exec::Serial);
  kernels::area_terms(pos, tris, a2, Exec::Parallel);
  EXPECT_TRUE(bitwise_equal(a1, a2));

  std::vector<kernels::CornerMasses> m1(T), m2(T);
  kernels::dual_masses(pos, tris, m1, Exec::Serial);
  kernels::dual_masses(pos, tris, m2, Exec::Parallel);
  EXPECT_TRUE(bitwise_equal(m1, m2));

  std::vector<kernels::VolumeTerm> v1(T), v2(T);
  kernels::volume_terms(pos, tris, v1, Exec::Serial);
  kernels::volume_terms(pos, tris, v2, Exec::Parallel);
  EXPECT_TRUE(bitwise_equal(v1, v2));

  std::vector<double> s1(T), s2(T);
  kernels::slopes(pos, tris, s1, Exec::Serial);
  kernels::slopes(pos, tris, s2, Exec::Parallel);
  EXPECT_TRUE(bitwise_equal(s1, s2));

  EXPECT_EQ(area(g, Exec::Serial), area(g, Exec::Parallel));
  EXPECT_EQ(algebraic_volume(g, Exec::Serial), algebraic_volume(g, Exec::Parallel));
  // Boundary entries are NaN, so compare element-wise.
  const auto h1 = mean_curvature(g, Exec::Serial), h2 = mean_curvature(g, Exec::Parallel);
  for (std::size_t i = 0; i < h1.size(); ++i) {
    if (std::isnan(h1[i])) EXPECT_TRUE(std::isnan(h2[i]));
    else EXPECT_EQ(h1[i], h2[i]);
  }
}

TEST(Kernels, AreaGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-0.3, 0.3);
  for (int k = 0; k < 100; ++k) {
    Vec3 p[3] = {{0, 0, U(rng)}, {1 + U(rng), U(rng), U(rng)}, {U(rng), 1 + U(rng), U(rng)}};
    const auto t = kernels::triangle_area_term(p[0], p[1], p[2]);
    for (int c = 0; c < 3; ++c) {
      for (int d = 0; d < 3; ++d) {
        const double h = 1e-6;
        Vec3 pp[3] = {p[0], p[1], p[2]}, pm[3] = {p[0], p[1], p[2]};
        double* cp = d == 0 ? &pp[c].x : d == 1 ? &pp[c].y : &pp[c].z;
        double* cm = d == 0 ? &pm[c].x : d == 1 ? &pm[c].y : &pm[c].z;
        *cp += h;
        *cm -= h;
        const double fd = (kernels::triangle_area_term(pp[0], pp[1], pp[2]).area -
                           kernels::triangle_area_term(pm[0], pm[1], pm[2]).area) /
                          (2 * h);
        const Vec3& gr = t.grad[c];
        const double ex = d == 0 ? gr.x : d == 1 ? gr.y : gr.z;
        EXPECT_NEAR(ex, fd, 1e-7);
      }
    }
  }
}

TEST(Kernels, FlatTriangleHasEuclideanArea) {
  const auto t = kernels::triangle_area_term({0, 0, 0.5}, {2, 0, 0.5}, {0, 1, 0.5});
  EXPECT_NEAR(t.area, 1.0, 1e-15);
  const auto m = kernels::triangle_dual_masses({0, 0, 0}, {2, 0, 0}, {0, 1, 0});
  EXPECT_NEAR(m[0] + m[1] + m[2], 1.0, 1e-14);
}

TEST(Kernels, OrderedSumIsLeftToRight) {
  const std::vector<double> v = {1e16, 1.0, -1e16, 1.0};
  EXPECT_EQ(kernels::ordered_sum(v), ((1e16 + 1.0) - 1e16) + 1.0);
}
