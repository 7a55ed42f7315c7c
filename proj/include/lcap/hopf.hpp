#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "lcap/flow.hpp"
#include "lcap/lorentz.hpp"

namespace lcap {

/// Rotational spacelike surface (rho cos t, rho sin t, u(rho)) described by its slope u'(rho).
struct RotationalSurface {
  std::function<double(double)> slope;
  double rho0 = 0.0;
  double rho1 = 1.0;
  double u_offset = 0.0;

  static RotationalSurface from_profile(const RotationalProfile& prof, double u_offset = 0.0);
};

/**
 * Samples of a conformal immersion on a polar grid (r_j, theta_k) of the unit
 * disc, or of an annulus r_min <= |z| <= 1. Ring j = 0 of a disc is the center
 * and repeats the same point in every sector. The second fundamental form is
 * stored in the Cartesian coordinates z = u + iv with the sign that makes the
 * mean curvature of H^2_+(p,r) equal to 1/r.
 */
struct ConformalPatch {
  bool disc = true;
  int rings = 0;    // last ring index; the outer boundary is ring `rings`
  int sectors = 0;  // a multiple of 8
  std::vector<double> r;      // rings + 1 radii
  std::vector<double> theta;  // sectors angles
  std::vector<double> E;      // conformal factor per ring
  std::vector<Vec3> x;        // ring-major samples
  std::vector<double> h11, h12, h22;
  std::vector<Vec3> N;

  std::size_t node(int ring, int sector) const { return static_cast<std::size_t>(ring) * sectors + sector; }
  std::size_t size() const { return x.size(); }
};

/**
 * Conformal coordinates of a rotational surface: |z| = r(rho) with
 * d log r / d rho = sqrt(1 - u'^2) / rho and r = 1 on the outer circle.
 * Samples are obtained by inverting r(rho) with a bracketing root finder.
 * `sectors` must be a multiple of 8.
 */
ConformalPatch conformal_parametrize_rotational(const RotationalSurface& s, int rings, int sectors);
ConformalPatch conformal_parametrize_rotational(const RotationalProfile& prof, int rings, int sectors,
                                                double u_offset = 0.0);

/// Largest |<x_u,x_u> - <x_v,x_v>| and |<x_u,x_v>| relative to E^2, from finite differences of the samples.
double conformality_residual(const ConformalPatch& p);

/// Lorentzian area by the trapezoid rule in r and the periodic rule in theta.
double patch_area(const ConformalPatch& p);

struct HopfField {
  const ConformalPatch* patch = nullptr;
  std::vector<std::complex<double>> phi;  // h11 - h22 - 2i h12 per node

  double max_abs() const;
  /// Smallest |phi| over rings strictly inside the patch.
  double min_abs_interior() const;
};

HopfField hopf_differential(const ConformalPatch& p);
/// The field refers to its patch, which must outlive it.
HopfField hopf_differential(ConformalPatch&&) = delete;

/// Max over interior nodes of |d phi / d zbar| by second-order centered differences.
double holomorphicity_residual(const HopfField& f);

/// Im(z^2 phi) on every node, and on the outer ring only.
std::vector<double> imz2phi(const HopfField& f);
std::vector<double> boundary_imz2phi(const HopfField& f);

/**
 * Both sides of the umbilicity identity at interior nodes. With principal
 * curvatures k1, k2 one has |phi|^2 = E^4 (k1 - k2)^2 = 4 E^4 (H^2 + K) for
 * K the intrinsic curvature -Laplace(log E)/E^2. The alternate normalization
 * (H^2 + K) / (4 E^2) is tracked alongside for comparison only.
 */
struct UmbilicityDiagnostic {
  double max_abs_phi2 = 0.0;
  double derived_error = 0.0;  // max | |phi|^2 - 4 E^4 (H^2 + K) |
  double alt_error = 0.0;      // max | |phi|^2 - (H^2 + K) / (4 E^2) |
  double max_H_spread = 0.0;   // max |H - mean H|
};

UmbilicityDiagnostic umbilicity_diagnostic(const HopfField& f);

/// r, theta, Re phi, Im phi, Im z^2 phi rows.
std::string hopf_csv(const HopfField& f);

}  // namespace lcap
