#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lcap/theorems.hpp"

using namespace lcap;

namespace {

constexpr double kPi = std::numbers::pi;

SpacelikeGraph disc_on_plane(double radius, int n, const std::function<double(double, double)>& u) {
  return SpacelikeGraph::build(Domain::disc(radius, n), u, SpacelikePlane{});
}

}  // namespace

TEST(Covering, WaistIsAWindingOneGraph) {
  const auto c = SampledCurve::geodesic_graph([](double) { return 0.0; }, 512);
  EXPECT_LT(c.sphere_residual(), 1e-14);
  const auto r = check_covering(c);
  EXPECT_TRUE(r.spacelike);
  EXPECT_TRUE(r.covering());
  EXPECT_TRUE(r.embedded);
  EXPECT_TRUE(r.graph_on_waist);
  EXPECT_EQ(r.winding, 1);
  EXPECT_LT(r.norm_identity_error, 1e-12);
}

TEST(Covering, HorizontalSectionsSatisfyTheNormIdentity) {
  // <alpha',a> = 0 along x3 = const, where the two identities coincide.
  const auto c = SampledCurve::tilted_section(0.0, 0.7, 1024);
  const auto r = check_covering(c);
  EXPECT_LT(r.norm_identity_error, 1e-10);
  EXPECT_LT(r.full_identity_error, 1e-10);
}

TEST(Covering, VerticalTermIsNeededOffHorizontalSections) {
  const auto c = SampledCurve::tilted_section(0.4, 0.2, 2048);
  const auto r = check_covering(c);
  EXPECT_LT(r.full_identity_error, 1e-9);
  EXPECT_GT(r.norm_identity_error, 1e-2);
  EXPECT_TRUE(r.covering());
}

TEST(Covering, RandomFamilyIsSpacelikeEmbeddedAndOfWindingOne) {
  const auto family = random_spacelike_family(40, 1024, 77);
  ASSERT_EQ(family.size(), 40u);
  for (const auto& c : family) {
    EXPECT_LT(c.sphere_residual(), 1e-12);
    const auto r = check_covering(c);
    EXPECT_TRUE(r.spacelike);
    EXPECT_TRUE(r.covering());
    EXPECT_EQ(std::abs(r.winding), 1);
    EXPECT_LT(r.full_identity_error, 1e-8);
    const auto pg = check_graph_on_plane(c);
    EXPECT_TRUE(pg.ok());
  }
}

TEST(Covering, NullTangentIsReportedWithAWitness) {
  // t(phi) = sin(phi) has |t'| = 1 at phi = 0.
  const auto c = SampledCurve::geodesic_graph([](double s) { return std::sin(s); }, 256);
  const auto r = check_covering(c);
  EXPECT_FALSE(r.spacelike);
  ASSERT_TRUE(r.failure_sample.has_value());
  EXPECT_EQ(*r.failure_sample, 0);
}

TEST(Covering, FigureEightProjectionIsNotAGraph) {
  std::vector<double> x, y;
  for (int k = 0; k < 200; ++k) {
    const double s = 2 * kPi * k / 200;
    x.push_back(std::sin(s));
    y.push_back(std::sin(s) * std::cos(s));
  }
  EXPECT_TRUE(find_crossing(x, y).has_value());
  // The two lobes are traversed in opposite senses.
  EXPECT_EQ(winding_number(x, y, 0.5, 0.0), -winding_number(x, y, -0.5, 0.0));
  EXPECT_NE(winding_number(x, y, 0.5, 0.0), 0);
}

TEST(Covering, WindingNumbers) {
  std::vector<double> x, y, x2, y2;
  for (int k = 0; k < 100; ++k) {
    const double s = 2 * kPi * k / 100;
    x.push_back(std::cos(s));
    y.push_back(std::sin(s));
    x2.push_back(std::cos(-2 * s));
    y2.push_back(std::sin(-2 * s));
  }
  EXPECT_EQ(winding_number(x, y), 1);
  EXPECT_EQ(winding_number(x, y, 3.0, 0.0), 0);
  EXPECT_EQ(winding_number(x2, y2), -2);
  EXPECT_FALSE(find_crossing(x, y).has_value());
}

TEST(OneSide, CapAboveItsBoundaryPlane) {
  // u = sqrt(1 + rho^2) - sqrt(2) has H = 1 and lies below x3 = 0 inside.
  const auto g = disc_on_plane(1.0, 24, [](double x, double y) { return std::sqrt(1 + x * x + y * y) - std::sqrt(2.0); });
  const auto r = check_one_side_plane(g);
  EXPECT_EQ(r.side, Side::Below);
  EXPECT_LT(r.max_value, 0.0);
}

TEST(OneSide, FlatDiscIsContained) {
  const auto r = check_one_side_plane(disc_on_plane(1.0, 16, [](double, double) { return 0.0; }));
  EXPECT_EQ(r.side, Side::Contained);
}

TEST(OneSide, MixedCurvatureDoesNotMeetTheHypothesis) {
  const auto g = disc_on_plane(1.0, 16, [](double x, double y) { return 0.2 * (1 - x * x - y * y) * x; });
  EXPECT_EQ(check_one_side_plane(g).side, Side::HypothesisNotMet);
}

TEST(OneSide, LeavesOfTheFoliation) {
  const HyperbolicPlane Hn{{0.1, -0.2, 0.3}, 0.8};
  for (double t : {-0.5, 0.0, 0.7}) {
    const double rho = 0.6;
    const Vec3 x{Hn.p.x + rho, Hn.p.y, Hn.p.z + t + std::sqrt(Hn.r * Hn.r + rho * rho)};
    EXPECT_NEAR(foliation_parameter(Hn, x), t, 1e-14);
  }
}

TEST(OneSide, LeafGraphIsContainedInItsHyperbolicPlane) {
  const HyperbolicPlane Hn{{0, 0, 0}, 1.0};
  const auto g = SpacelikeGraph::build(Domain::disc(1.0, 24), [](double x, double y) { return std::sqrt(1 + x * x + y * y); }, Hn);
  EXPECT_EQ(check_one_side_hyperbolic(g, Hn).side, Side::Contained);
}

TEST(OneSide, RotationalProfilesInHigherDimension) {
  const RotationalProfile plane_case(1.0, 0.0, 0.0, 1.0, 3);
  const auto r = check_one_side_plane(plane_case, 200);
  EXPECT_TRUE(r.side == Side::Above || r.side == Side::Below);
  const RotationalProfile flat(0.0, 0.0, 0.0, 1.0, 3);
  EXPECT_EQ(check_one_side_plane(flat, 200).side, Side::Contained);
}

TEST(OneSide, SideNames) {
  EXPECT_STREQ(to_string(Side::Above), "above");
  EXPECT_STREQ(to_string(Side::Violation), "violation");
}
