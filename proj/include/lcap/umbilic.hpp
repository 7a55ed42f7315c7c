#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lcap/lorentz.hpp"

namespace lcap {

/// Spacelike plane {x : <x-p,v> = 0} with unit future timelike normal v.
struct SpacelikePlane {
  Vec3 p;
  Vec3 v{0.0, 0.0, 1.0};

  /// Normalizes v and orients it to the future. Throws unless v is timelike.
  static SpacelikePlane make(const Vec3& p, const Vec3& v);
};

enum class Branch { Upper, Lower };

/// Component of {<x-p,x-p> = -r^2} with x3 >= p3 (Upper) or x3 <= p3 (Lower).
struct HyperbolicPlane {
  Vec3 p;
  double r = 1.0;
  Branch branch = Branch::Upper;
};

/// de Sitter surface {<x-p,x-p> = r^2}.
struct Pseudosphere {
  Vec3 p;
  double r = 1.0;
};

using SupportSurface = std::variant<SpacelikePlane, HyperbolicPlane, Pseudosphere>;

/// Horizontal circle of S^2_1(p,r) through the height of its center.
struct WaistCircle {
  Vec3 p;
  double r = 1.0;

  Vec3 point(double phi) const;
  bool contains(const Vec3& q, double tol = 1e-9) const;
};

std::string kind_name(const SupportSurface& s);

/// Causal sign of the support: +1 for the (timelike) pseudosphere, -1 otherwise.
CausalSign support_sign(const SupportSurface& s);

/// Value of the defining equation at x; zero exactly on the surface (and branch).
double level_residual(const SupportSurface& s, const Vec3& x);
bool on_surface(const SupportSurface& s, const Vec3& x, double tol = 1e-8);

/// Unit normal: v for planes, the future one for hyperbolic planes, (x-p)/r outward for pseudospheres.
Vec3 surface_normal(const SupportSurface& s, const Vec3& x);

/// 0 for planes, +-1/r for the two hyperbolic branches, none for the pseudosphere.
std::optional<double> mean_curvature_analytic(const SupportSurface& s);

// --- Unit pseudosphere S^2_1 = S^2_1(O,1) and its waist C -----------------

/// F(t,q) = cosh(t) q + sinh(t) a for q on the unit waist.
Vec3 geodesic_param(double t, const Vec3& q);
/// Same on S^2_1(p,r) through the isometry x -> p + r x.
Vec3 geodesic_param(const Pseudosphere& s, double t, const Vec3& q);

/// Orthogonal projection onto the waist, (p + <p,a>a)/sqrt(1+<p,a>^2).
Vec3 project_pi(const Vec3& p);

/// Exact derivative of project_pi at p applied to a tangent vector v.
Vec3 project_pi_differential(const Vec3& p, const Vec3& v);

/**
 * Constant value of <N,N_S> along M ∩ S with N future-directed:
 * <p,v> for a plane, +-(1 - r^2 - <p,p>)/(2r) for a hyperbolic plane.
 * Supports other than S^2_1(O,1) are reduced to it by the affine isometry.
 */
double analytic_contact_angle(const SupportSurface& m, const Pseudosphere& s = {});

/// Height (c^2 - r^2 - 1)/(2c) of H^2((0,0,c),r) ∩ S^2_1(O,1).
double cap_boundary_height(double c, double r);

/**
 * Sample points of M ∩ S^2_1(O,1) at the waist angles 2*pi*k/count, where M
 * is a spacelike plane or a hyperbolic plane. Throws when the intersection
 * is empty on the requested branch.
 */
std::vector<Vec3> support_intersection(const SupportSurface& m, int count);

// --- Boundary charts -------------------------------------------------------

/**
 * One-coordinate chart used for boundary vertices: a vertex keeps its polar
 * angle phi about the support axis and slides along q. On the pseudosphere q
 * is the geodesic time t; on planes and hyperbolic planes q is the planar
 * distance to the axis.
 */
class SupportChart {
 public:
  explicit SupportChart(SupportSurface s);

  const SupportSurface& surface() const { return surface_; }
  double axis_x() const { return cx_; }
  double axis_y() const { return cy_; }

  Vec3 position(double q, double phi) const;
  /// d position / dq.
  Vec3 tangent(double q, double phi) const;
  double coordinate(const Vec3& x) const;
  double angle(const Vec3& x) const;

  /// Signed wetted area for a boundary given by chart coordinates at the given angles.
  double wetted_area(std::span<const double> q, std::span<const double> phi) const;
  /// dW/dq_k.
  std::vector<double> wetted_gradient(std::span<const double> q, std::span<const double> phi) const;
  /// Nonzero entries of the Hessian of W: diagonal plus the cyclic neighbour coupling.
  struct WettedHessian {
    std::vector<double> diag;
    std::vector<double> next;  ///< d2W / dq_k dq_{k+1 mod K}
  };
  WettedHessian wetted_hessian(std::span<const double> q, std::span<const double> phi) const;

  /// Integral of x3 over the planar shadow of the wetted region (the part of
  /// the support between the chart origin and the boundary). Subtracting it
  /// from the volume under a graph gives the volume enclosed with the support.
  double support_volume(std::span<const double> q, std::span<const double> phi) const;
  std::vector<double> support_volume_gradient(std::span<const double> q, std::span<const double> phi) const;
  WettedHessian support_volume_hessian(std::span<const double> q, std::span<const double> phi) const;

 private:
  SupportSurface surface_;
  double cx_ = 0.0;
  double cy_ = 0.0;
};

/// Trapezoid weights of a periodic increasing angle sequence.
std::vector<double> periodic_angle_weights(std::span<const double> phi);

// --- Plain-text configuration ---------------------------------------------

/// key=value lines: kind, center, normal, radius, branch.
std::string to_config(const SupportSurface& s);
SupportSurface support_from_config(const std::map<std::string, std::string>& kv);

}  // namespace lcap
