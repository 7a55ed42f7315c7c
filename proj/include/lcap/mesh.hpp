#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcap/kernels.hpp"
#include "lcap/lorentz.hpp"
#include "lcap/umbilic.hpp"

namespace lcap {

/// Default spacelike margin: every triangle keeps |grad u| <= 1 - kDeltaSpace.
inline constexpr double kDeltaSpace = 1e-3;

/**
 * Polar-structured planar domain. A disc has a center vertex followed by
 * rings 1..rings, each with `sectors` vertices; an annulus has rings 0..rings
 * between r_in and r_out. Ring radii are uniform.
 */
struct Domain {
  enum class Kind { Disc, Annulus };

  Kind kind = Kind::Disc;
  double r_in = 0.0;
  double r_out = 1.0;
  int rings = 8;
  int sectors = 16;
  double cx = 0.0;
  double cy = 0.0;

  /// Disc at resolution n: n rings and 2n sectors.
  static Domain disc(double radius, int resolution, double cx = 0.0, double cy = 0.0);
  static Domain annulus(double r_in, double r_out, int resolution, double cx = 0.0, double cy = 0.0);

  int vertex_count() const;
  /// Vertex index of (ring, sector); for a disc ring 0 is the center.
  int index(int ring, int sector) const;
  double ring_radius(int ring) const;
  double sector_angle(int sector) const;
  void validate() const;
};

struct Topology {
  Domain domain;
  std::vector<kernels::Tri> tris;
  /// Outer loop counterclockwise first, then (annulus) the inner loop clockwise.
  std::vector<std::vector<int>> loops;
  std::vector<char> on_boundary;
  std::vector<int> interior;
};

std::shared_ptr<const Topology> make_topology(const Domain& d);

/**
 * Triangulated height field x3 = u(x1,x2). Positions are stored in L^3 so
 * that boundary vertices can slide along a support surface; interior vertices
 * keep their planar position. Immutable after construction.
 */
class SpacelikeGraph {
 public:
  using HeightFn = std::function<double(double, double)>;

  static SpacelikeGraph build(const Domain& d, const HeightFn& height,
                              std::optional<SupportSurface> support = std::nullopt,
                              double delta_space = kDeltaSpace);
  static SpacelikeGraph from_positions(std::shared_ptr<const Topology> topo, std::vector<Vec3> positions,
                                       std::optional<SupportSurface> support = std::nullopt,
                                       double delta_space = kDeltaSpace);

  /// Same topology and support with new positions; validated again.
  SpacelikeGraph with_positions(std::vector<Vec3> positions, double delta_space = kDeltaSpace) const;
  SpacelikeGraph with_support(std::optional<SupportSurface> support) const;

  const Domain& domain() const { return topo_->domain; }
  const std::shared_ptr<const Topology>& topology() const { return topo_; }
  std::span<const Vec3> positions() const { return pos_; }
  std::span<const kernels::Tri> triangles() const { return topo_->tris; }
  const std::vector<std::vector<int>>& loops() const { return topo_->loops; }
  const std::vector<int>& outer_loop() const { return topo_->loops.front(); }
  std::span<const int> interior() const { return topo_->interior; }
  bool is_boundary(int v) const { return topo_->on_boundary[v] != 0; }
  const std::optional<SupportSurface>& support() const { return support_; }
  std::size_t vertex_count() const { return pos_.size(); }

  /// Largest |grad u| over triangles.
  double max_slope() const;
  /// Largest planar distance between outer-boundary vertices.
  double diameter() const;

 private:
  SpacelikeGraph(std::shared_ptr<const Topology> topo, std::vector<Vec3> pos, std::optional<SupportSurface> s)
      : topo_(std::move(topo)), pos_(std::move(pos)), support_(std::move(s)) {}
  void validate(double delta_space) const;

  std::shared_ptr<const Topology> topo_;
  std::vector<Vec3> pos_;
  std::optional<SupportSurface> support_;
};

/// Circumcentric dual mass of each vertex in the planar projection.
std::vector<double> dual_masses(const SpacelikeGraph& g, kernels::Exec exec = kernels::Exec::Parallel);

/// Euclidean gradient of the Lorentzian area with respect to each vertex position.
std::vector<Vec3> area_gradient(const SpacelikeGraph& g, kernels::Exec exec = kernels::Exec::Parallel);

/// Unit future timelike normal per vertex. Interior vertices average the
/// triangle normals by area; boundary vertices use a high-order polar
/// reconstruction of grad u along their sector ray and along the loop.
std::vector<Vec3> future_normal(const SpacelikeGraph& g);

/// Discrete H per vertex, dA/du_i / (2 M_i); NaN on boundary vertices.
std::vector<double> mean_curvature(const SpacelikeGraph& g, kernels::Exec exec = kernels::Exec::Parallel);

double area(const SpacelikeGraph& g, kernels::Exec exec = kernels::Exec::Parallel);
/// Signed volume between the graph and {x3 = 0}, sum_i M_i u_i.
double algebraic_volume(const SpacelikeGraph& g, kernels::Exec exec = kernels::Exec::Parallel);

struct BoundaryFrame {
  int vertex = -1;
  Vec3 tau, nu, N, nu_sigma, N_sigma;
  CausalSign eps;

  /// Largest violation of the unit/orthogonality relations and the det = 1 conventions.
  double invariant_error() const;
};

std::vector<BoundaryFrame> boundary_frames(const SpacelikeGraph& g, const SupportSurface& s);

/// Area of the region of s bounded by the outer boundary (and the waist for a pseudosphere).
double wetted_area(const SpacelikeGraph& g, const SupportSurface& s);

}  // namespace lcap
