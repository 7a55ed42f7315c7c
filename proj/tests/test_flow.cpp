#include <gtest/gtest.h>

#include <cmath>

#include "lcap/flow.hpp"

using namespace lcap;

namespace {

SpacelikeGraph cap(int n) {
  return SpacelikeGraph::build(Domain::disc(1.0, n),
                               [](double x, double y) { return std::sqrt(1 + x * x + y * y) - std::sqrt(2.0); },
                               Pseudosphere{});
}

SpacelikeGraph waist_disc(int n) {
  return SpacelikeGraph::build(Domain::disc(1.0, n), [](double, double) { return 0.0; }, Pseudosphere{});
}

}  // namespace

TEST(Flow, PerturbKeepsBoundaryAndHitsAmplitude) {
  const auto g = cap(16);
  const auto p = perturb(g, 0.02, 5);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const double d = std::abs(p.positions()[i].z - g.positions()[i].z);
    if (g.is_boundary(static_cast<int>(i))) EXPECT_EQ(d, 0.0);
    worst = std::max(worst, d);
  }
  EXPECT_NEAR(worst, 0.02, 1e-14);
  const auto q = perturb(g, 0.02, 5);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) EXPECT_EQ(p.positions()[i].z, q.positions()[i].z);
}

TEST(Flow, AdmissibleLambda) {
  EXPECT_THROW(check_admissible_lambda(SpacelikePlane{}, -0.5), std::exception);
  EXPECT_NO_THROW(check_admissible_lambda(SpacelikePlane{}, -1.3));
  EXPECT_THROW(check_admissible_lambda(HyperbolicPlane{}, 0.0), std::exception);
  EXPECT_NO_THROW(check_admissible_lambda(Pseudosphere{}, 3.0));
}

TEST(Flow, ClassifiesAnalyticSurfaces) {
  const auto c = classify(cap(32));
  EXPECT_EQ(c.kind, Classification::Kind::HyperbolicCap);
  EXPECT_NEAR(c.r, 1.0, 1e-6);
  EXPECT_NEAR(c.p.z, -std::sqrt(2.0), 1e-6);

  const auto d = classify(SpacelikeGraph::build(Domain::disc(1.0, 16), [](double x, double y) { return 0.1 * x - 0.2 * y + 0.3; }));
  EXPECT_EQ(d.kind, Classification::Kind::PlanarDisc);
  EXPECT_NEAR(d.plane_a, 0.1, 1e-10);
  EXPECT_NEAR(d.plane_c, 0.3, 1e-10);

  const auto o = classify(SpacelikeGraph::build(Domain::disc(1.0, 16), [](double x, double y) { return 0.2 * x * x * y; }));
  EXPECT_EQ(o.kind, Classification::Kind::Other);
}

TEST(Flow, WaistDiscIsAFixedPoint) {
  SolveOptions o;
  o.lambda = 0.0;
  o.H_target = 0.0;
  const auto r = solve_stationary(Pseudosphere{}, o, waist_disc(16));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
}

TEST(Flow, PerturbedCapReturnsToACap) {
  SolveOptions o;
  o.lambda = 1.0;
  const auto init = perturb(cap(24), 0.02, 3);
  o.volume_target = enclosed_volume(cap(24), Pseudosphere{});
  const auto r = solve_stationary(Pseudosphere{}, o, init);
  ASSERT_TRUE(r.converged);
  EXPECT_LT(r.report.residual, 1e-8);
  EXPECT_NEAR(r.report.angle_mean, 1.0, 1e-8);
  const auto c = classify(r.graph);
  EXPECT_EQ(c.kind, Classification::Kind::HyperbolicCap);
  EXPECT_NEAR(enclosed_volume(r.graph, Pseudosphere{}), *o.volume_target, 1e-10);
  EXPECT_FALSE(trace_csv(r.trace).empty());
}

TEST(Flow, SerialAndParallelSolvesAgreeBitwise) {
  SolveOptions o;
  o.lambda = 1.0;
  o.H_target = 1.0;
  o.max_iters = 6;
  const auto init = perturb(cap(16), 0.01, 9);
  o.exec = kernels::Exec::Serial;
  const auto a = solve_stationary(Pseudosphere{}, o, init);
  o.exec = kernels::Exec::Parallel;
  const auto b = solve_stationary(Pseudosphere{}, o, init);
  ASSERT_EQ(a.iterations, b.iterations);
  for (std::size_t i = 0; i < a.graph.vertex_count(); ++i) {
    EXPECT_EQ(a.graph.positions()[i].x, b.graph.positions()[i].x);
    EXPECT_EQ(a.graph.positions()[i].y, b.graph.positions()[i].y);
    EXPECT_EQ(a.graph.positions()[i].z, b.graph.positions()[i].z);
  }
}

TEST(Flow, RequiresExactlyOneTarget) {
  SolveOptions o;
  o.lambda = 1.0;
  EXPECT_THROW(solve_stationary(Pseudosphere{}, o, cap(8)), std::exception);
  o.H_target = 1.0;
  o.volume_target = 0.1;
  EXPECT_THROW(solve_stationary(Pseudosphere{}, o, cap(8)), std::exception);
}

class ProfileCase : public ::testing::TestWithParam<std::tuple<double, double, int>> {};

TEST_P(ProfileCase, SatisfiesTheFirstIntegral) {
  const auto [H, c, n] = GetParam();
  const RotationalProfile prof(H, c, 0.3, 1.2, n);
  for (double rho : {0.35, 0.6, 0.9, 1.15}) {
    const double up = prof.slope(rho);
    EXPECT_LT(std::abs(up), 1.0);
    EXPECT_NEAR(std::pow(rho, n - 1) * up / std::sqrt(1 - up * up), H * std::pow(rho, n) + c, 1e-12);
    const double h = 1e-5;
    EXPECT_NEAR((prof.height(rho + h) - prof.height(rho - h)) / (2 * h), up, 1e-8);
  }
  EXPECT_NEAR(prof.height(0.3), 0.0, 1e-15);
}

INSTANTIATE_TEST_SUITE_P(Profiles, ProfileCase,
                         ::testing::Values(std::make_tuple(1.0, 0.5, 2), std::make_tuple(-0.5, 0.1, 2),
                                           std::make_tuple(0.3, 0.0, 3), std::make_tuple(1.0, 0.2, 3)));

TEST(Flow, RevolvedDiscProfileIsACap) {
  // H = 1, c = 0 gives u' = rho / sqrt(1 + rho^2): the unit hyperbolic cap.
  const RotationalProfile prof(1.0, 0.0, 0.0, 1.0);
  const auto g = revolve(prof, 24, -std::sqrt(2.0) + 1.0);
  const auto c = classify(g);
  EXPECT_EQ(c.kind, Classification::Kind::HyperbolicCap);
  EXPECT_NEAR(c.r, 1.0, 1e-6);
}
