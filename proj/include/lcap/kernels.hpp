#pragma once

#include <array>
#include <span>
#include <vector>

#include "lcap/lorentz.hpp"

// Per-triangle kernels. Each kernel fills one output slot per triangle, so the
// Serial and Parallel variants produce bitwise identical arrays; the follow-up
// scatter to vertices always runs serially in triangle order.
namespace lcap::kernels {

enum class Exec { Serial, Parallel };

using Tri = std::array<int, 3>;

/// Lorentzian area of triangle (a,b,c) and its Euclidean gradient in each vertex.
struct AreaTerm {
  double area = 0.0;
  std::array<Vec3, 3> grad{};
};

/// Circumcentric (cotangent) dual masses of the planar projection, one per corner.
using CornerMasses = std::array<double, 3>;

AreaTerm triangle_area_term(const Vec3& a, const Vec3& b, const Vec3& c);
CornerMasses triangle_dual_masses(const Vec3& a, const Vec3& b, const Vec3& c);

/// Planar gradient of the linear interpolant of the heights.
std::array<double, 2> triangle_slope(const Vec3& a, const Vec3& b, const Vec3& c);

/// Twice the signed planar area.
inline double planar_cross(const Vec3& a, const Vec3& b, const Vec3& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

/**
 * Vertex-quadrature volume sum_i M_i u_i restricted to one triangle, together
 * with its exact gradient in every corner (planar and height components).
 */
struct VolumeTerm {
  double volume = 0.0;
  std::array<Vec3, 3> grad{};
};
VolumeTerm triangle_volume_term(const Vec3& a, const Vec3& b, const Vec3& c);

void area_terms(std::span<const Vec3> pos, std::span<const Tri> tris, std::span<AreaTerm> out, Exec exec);
void dual_masses(std::span<const Vec3> pos, std::span<const Tri> tris, std::span<CornerMasses> out, Exec exec);
void volume_terms(std::span<const Vec3> pos, std::span<const Tri> tris, std::span<VolumeTerm> out, Exec exec);
void slopes(std::span<const Vec3> pos, std::span<const Tri> tris, std::span<double> slope_norm, Exec exec);

/// Left-to-right sum; the order never depends on the thread count.
double ordered_sum(std::span<const double> values);

/// Scatter per-corner values into vertex arrays, in triangle order.
std::vector<double> scatter(std::span<const Tri> tris, std::span<const CornerMasses> corner, std::size_t n_vertices);
std::vector<Vec3> scatter(std::span<const Tri> tris, std::span<const std::array<Vec3, 3>> corner,
                          std::size_t n_vertices);

}  // namespace lcap::kernels
