#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lcap/flow.hpp"
#include "lcap/mesh.hpp"
#include "lcap/umbilic.hpp"

namespace lcap {

/// One line of a structured verdict: check name, outcome, witness and tolerance.
struct Verdict {
  std::string check;
  bool pass = false;
  std::string witness;
  double value = 0.0;
  double tolerance = 0.0;
};

std::string format_verdict(const Verdict& v);

// --- closed curves on the unit pseudosphere --------------------------------------

/**
 * Periodic samples alpha(s_k), s_k = 2 pi k / K, of a closed curve on S^2_1.
 * Derivatives are taken with respect to s by centered periodic differences.
 */
struct SampledCurve {
  std::vector<Vec3> points;

  static SampledCurve from_function(const std::function<Vec3(double)>& alpha, int samples);
  /// Geodesic graph alpha(phi) = F(t(phi), (cos phi, sin phi, 0)).
  static SampledCurve geodesic_graph(const std::function<double(double)>& t, int samples);
  /// S^2_1 ∩ {x3 = m x1 + b}; needs |m| < 1.
  static SampledCurve tilted_section(double m, double b, int samples);

  int size() const { return static_cast<int>(points.size()); }
  double spacing() const;
  std::vector<Vec3> tangents() const;
  /// Largest | <alpha,alpha> - 1 |.
  double sphere_residual() const;
};

struct CoveringReport {
  bool spacelike = true;
  /// First sample whose tangent is null or timelike.
  std::optional<int> failure_sample;
  double failure_norm = 0.0;  // <alpha',alpha'> / |alpha'|^2 at that sample
  /// max | <psi',psi'> (1 + <alpha,a>^2) - <alpha',alpha'> | / <alpha',alpha'>.
  /// Exact only where <alpha',a> = 0; elsewhere it equals the term below.
  double norm_identity_error = 0.0;
  /// Same with the vertical term <alpha',a>^2 / (1 + <alpha,a>^2) added to the right side.
  double full_identity_error = 0.0;
  int winding = 0;
  /// The angle of psi = pi(alpha) advances strictly in one direction.
  bool monotone = false;
  /// No two non-adjacent chords cross, at sample resolution.
  bool embedded = false;
  /// alpha is a geodesic graph over the waist: monotone with winding +-1.
  bool graph_on_waist = false;

  bool covering() const { return spacelike && monotone && winding != 0; }
};

/**
 * Covering test for the projection onto the waist. psi = pi(alpha) is
 * differentiated from its own samples, independently of the closed-form
 * differential, so the norm identity checks the projection as a map.
 */
CoveringReport check_covering(const SampledCurve& c, double null_tol = 1e-10);

struct PlaneGraphReport {
  bool injective = true;
  bool simple = true;
  int winding = 0;
  /// Offending sample pair for a repeated projection or crossing chords.
  std::optional<std::pair<int, int>> witness;
  double min_separation = 0.0;

  bool ok() const { return injective && simple && (winding == 1 || winding == -1); }
};

/// Vertical projection onto {x3 = 0}: injectivity, simplicity, winding about the axis.
PlaneGraphReport check_graph_on_plane(const SampledCurve& c, double separation_tol = 1e-12);

/// Signed turns of the closed planar polygon (x_k, y_k) about (cx, cy).
int winding_number(const std::vector<double>& x, const std::vector<double>& y, double cx = 0.0, double cy = 0.0);

/// Index pair of two crossing non-adjacent edges of a closed planar polygon, if any.
std::optional<std::pair<int, int>> find_crossing(const std::vector<double>& x, const std::vector<double>& y);

/// Random spacelike curves on S^2_1: tilted sections and geodesic graphs with |t'| <= 0.9.
std::vector<SampledCurve> random_spacelike_family(int count, int samples, std::uint64_t seed);

// --- one side of a support ---------------------------------------------------------

enum class Side { Above, Below, Contained, Violation, HypothesisNotMet };
const char* to_string(Side s);

struct OneSideOptions {
  double boundary_tol = 1e-8;
  /// |H| (plane) or ||H| - 1/r| (hyperbolic) below this everywhere selects the
  /// contained case. Discrete curvature of an exact leaf is only O(h^2) accurate.
  double curvature_tol = 5e-3;
  double contain_tol = 1e-8;
};

struct OneSideReport {
  Side side = Side::HypothesisNotMet;
  std::optional<int> witness;
  double min_value = 0.0;  // heights above the plane, or foliation parameter
  double max_value = 0.0;
  double min_H = 0.0;
  double max_H = 0.0;
};

/**
 * Heights above a spacelike plane, h = -<x - p, v>, for a graph whose boundary
 * lies on it. Interior mean curvature of one strict sign demands interior
 * heights of one strict sign; H = 0 demands |h| < contain_tol.
 */
OneSideReport check_one_side_plane(const SpacelikeGraph& g, const SpacelikePlane& P = {},
                                   const OneSideOptions& opt = {});

/// Foliation parameter t with x on H^2_+(p + t a, r).
double foliation_parameter(const HyperbolicPlane& Hn, const Vec3& x);

/**
 * One-side test against an upper hyperbolic plane through the foliation by
 * its vertical translates. The hypothesis is |H| - 1/r of one strict sign on
 * the interior, or |H| = 1/r everywhere (then the graph must lie on a leaf).
 */
OneSideReport check_one_side_hyperbolic(const SpacelikeGraph& g, const HyperbolicPlane& Hn,
                                        const OneSideOptions& opt = {});

/**
 * Same tests for a rotational hypersurface in L^{n+1} evaluated along its
 * profile, with heights measured from the boundary sphere rho = rho1. The
 * curvature is constant, so the hypothesis reduces to the sign of H.
 */
OneSideReport check_one_side_plane(const RotationalProfile& prof, int samples, const OneSideOptions& opt = {});
OneSideReport check_one_side_hyperbolic(const RotationalProfile& prof, double u_offset, const HyperbolicPlane& Hn,
                                        int samples, const OneSideOptions& opt = {});

}  // namespace lcap
