#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lcap/mesh.hpp"

namespace lcap {

struct EnergyBreakdown {
  double surface_area = 0.0;
  double wetted_area = 0.0;
  double lambda = 0.0;
  double energy = 0.0;  // surface_area + lambda * wetted_area
  double volume = 0.0;
};

EnergyBreakdown energy(const SpacelikeGraph& g, const SupportSurface& s, double lambda);

/// Volume between the graph and the wetted part of the support: the algebraic
/// volume minus the integral of x3 over the shadow of the wetted region. It is
/// the volume held fixed by the solver; only its boundary derivatives differ
/// from those of the algebraic volume.
double enclosed_volume(const SpacelikeGraph& g, const SupportSurface& s);

/**
 * Discrete degrees of freedom of a disc graph whose outer boundary lies on a
 * support: one height per interior vertex, one chart coordinate per boundary
 * vertex. Boundary vertices keep their polar angle about the support axis.
 */
class DofModel {
 public:
  DofModel(const SpacelikeGraph& g, const SupportSurface& s);

  std::size_t size() const { return vertex_of_.size(); }
  std::size_t interior_count() const { return n_interior_; }
  std::size_t boundary_count() const { return size() - n_interior_; }
  bool is_boundary_dof(std::size_t d) const { return d >= n_interior_; }
  int vertex_of(std::size_t d) const { return vertex_of_[d]; }
  /// DOF index of vertex v.
  std::size_t dof_of(int v) const { return dof_of_[v]; }

  const SupportChart& chart() const { return chart_; }
  const SupportSurface& support() const { return chart_.surface(); }
  const std::shared_ptr<const Topology>& topology() const { return topo_; }
  /// Polar angle of boundary DOF n_interior + k about the support axis.
  double boundary_angle(std::size_t k) const { return phi_[k]; }
  std::span<const double> boundary_angles() const { return phi_; }

  std::vector<double> values(const SpacelikeGraph& g) const;
  Vec3 position(std::size_t d, double value) const;
  /// d position / d value.
  Vec3 dposition(std::size_t d, double value) const;
  std::vector<Vec3> positions(std::span<const double> x) const;
  SpacelikeGraph graph(std::span<const double> x, double delta_space = kDeltaSpace) const;

 private:
  std::shared_ptr<const Topology> topo_;
  SupportChart chart_;
  std::vector<Vec3> base_;
  std::vector<int> vertex_of_;
  std::vector<std::size_t> dof_of_;
  std::vector<double> phi_;
  std::size_t n_interior_ = 0;
};

/// Area, enclosed volume and wetted area with their exact derivatives in DOF space.
struct DiscreteGradients {
  double area = 0.0;
  double volume = 0.0;
  double wetted = 0.0;
  std::vector<double> dA, dV, dW;
};

DiscreteGradients discrete_gradients(const DofModel& m, std::span<const double> x,
                                     kernels::Exec exec = kernels::Exec::Parallel);

/**
 * Weak contact value of each boundary DOF, -(dA - 2 Hbar dV) / dW. At a
 * discrete critical point with constant H it equals lambda exactly; on smooth
 * surfaces it converges to <N, N_Sigma>.
 */
std::vector<double> weak_contact_values(const DofModel& m, const DiscreteGradients& g, double H_bar);

struct VariationField {
  std::vector<Vec3> xi;
};

/// Tolerance on <N_Sigma, xi> at boundary vertices, relative to |xi| |N_Sigma|.
inline constexpr double kTangentTolerance = 1e-9;

/// -sum <N, xi> dA_i with the lumped Lorentzian vertex area dA_i = M_i / N_i.z.
double first_variation_volume(const SpacelikeGraph& g, const VariationField& xi);

/**
 * -2 sum H <N,xi> dA - sum (lambda - c) <nu_Sigma, xi> ds using weak contact
 * values c. Equals the directional derivative of the discrete energy along
 * the deformation family of `deform`. Rejects fields that are not tangent to
 * the support along the boundary.
 */
double first_variation_energy(const SpacelikeGraph& g, const SupportSurface& s, double lambda,
                              const VariationField& xi);

/// Same formula with pointwise frames: <N, N_Sigma> from boundary_frames and
/// trapezoid boundary lengths. Converges to the exact derivative under refinement.
double first_variation_energy_frames(const SpacelikeGraph& g, const SupportSurface& s, double lambda,
                                     const VariationField& xi);

/**
 * The deformation family generated by xi: interior heights move by
 * -<N,xi>/N.z (the vertical field with the same normal component), boundary
 * vertices move along the support by the chart component of xi.
 */
SpacelikeGraph deform(const SpacelikeGraph& g, const SupportSurface& s, const VariationField& xi, double t);

/// Smooth random admissible field: vertical inside, along the chart direction on the boundary.
VariationField random_admissible_field(const SpacelikeGraph& g, const SupportSurface& s, std::uint64_t seed);

struct StationarityReport {
  std::vector<int> interior_ids;
  std::vector<double> H_values;
  double H_mean = 0.0;
  double H_std = 0.0;
  std::vector<int> boundary_ids;
  /// Weak contact values, one per boundary vertex.
  std::vector<double> angle_values;
  double angle_mean = 0.0;
  double angle_std = 0.0;
  /// Pointwise <N, N_Sigma> from the boundary frames.
  std::vector<double> frame_angle_values;
  double frame_angle_mean = 0.0;
  double frame_angle_std = 0.0;
  double residual = 0.0;  // max(H_std, angle_std)
};

StationarityReport stationarity_report(const SpacelikeGraph& g, const SupportSurface& s);

/// vertex id, quantity, value rows.
std::string report_csv(const StationarityReport& r);
std::string report_summary(const StationarityReport& r);

/// mu = -2 H_mean; throws when the report residual exceeds the threshold.
double lagrange_multiplier(const StationarityReport& r, double threshold = 1e-3);
double lagrange_multiplier(const SpacelikeGraph& g, double threshold = 1e-3);

}  // namespace lcap
