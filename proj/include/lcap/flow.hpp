#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcap/variational.hpp"

namespace lcap {

struct SolveOptions {
  double lambda = 0.0;
  /// Exactly one of the two targets must be set.
  std::optional<double> volume_target;
  std::optional<double> H_target;
  int max_iters = 100;
  /// Initial Levenberg-Marquardt damping used when a Newton step is rejected.
  double step0 = 1e-3;
  double residual_tol = 1e-8;
  std::uint64_t seed = 0;
  double delta_space = kDeltaSpace;
  kernels::Exec exec = kernels::Exec::Parallel;
};

struct TraceRow {
  int iter = 0;
  double energy = 0.0;
  double area = 0.0;
  double wetted = 0.0;
  double volume = 0.0;
  double residual = 0.0;
};

struct SolveResult {
  SpacelikeGraph graph;
  StationarityReport report;
  std::vector<TraceRow> trace;
  bool converged = false;
  int iterations = 0;
  /// Multiplier of the volume constraint (-2 H_target in H mode).
  double multiplier = 0.0;
};

/**
 * Drives a disc graph with boundary on `s` to a discrete critical point of
 * area + lambda * wetted area, either at fixed volume or with the volume term
 * -2 H_target V. Interior vertices move vertically and boundary vertices slide
 * in the support chart. Each iteration takes a Newton step on the stationarity
 * system, falling back to Levenberg-Marquardt, and accepts only steps that
 * lower the scaled residual and keep every triangle spacelike.
 */
SolveResult solve_stationary(const SupportSurface& s, const SolveOptions& opts, const SpacelikeGraph& init);

/// Throws when a spacelike support is paired with lambda > -1.
void check_admissible_lambda(const SupportSurface& s, double lambda);

std::string trace_csv(const std::vector<TraceRow>& trace);

// --- classification ------------------------------------------------------------

struct Classification {
  enum class Kind { PlanarDisc, HyperbolicCap, Other };
  Kind kind = Kind::Other;
  /// Plane x3 = a x1 + b x2 + c.
  double plane_a = 0.0, plane_b = 0.0, plane_c = 0.0;
  /// Quadric <x - p, x - p> = -r^2.
  Vec3 p;
  double r = 0.0;
  double plane_rms = 0.0;
  double quadric_rms = 0.0;
  double rms_fit = 0.0;
  double diameter = 0.0;
};

const char* to_string(Classification::Kind k);

/// Default fit tolerance relative to the mesh diameter.
inline constexpr double kFitTolerance = 1e-4;

Classification classify(const SpacelikeGraph& g, double fit_tol = kFitTolerance);

// --- rotational profiles -----------------------------------------------------------

/**
 * Rotational spacelike hypersurface of constant mean curvature H in L^{n+1}
 * given by the first integral rho^{n-1} u' / sqrt(1 - u'^2) = H rho^n + c.
 */
class RotationalProfile {
 public:
  RotationalProfile(double H, double c, double rho0, double rho1, int dim = 2);

  double H() const { return H_; }
  double c() const { return c_; }
  int dim() const { return dim_; }
  double rho0() const { return rho0_; }
  double rho1() const { return rho1_; }

  double slope(double rho) const;
  /// u(rho) - u(rho0), by adaptive Gauss-Kronrod quadrature.
  double height(double rho) const;

 private:
  double H_, c_, rho0_, rho1_;
  int dim_;
};

struct ProfileSample {
  double rho = 0.0;
  double u = 0.0;
};

std::vector<ProfileSample> rotational_cmc_profile(double H, double c, double rho0, double rho1, int n_samples,
                                                  int dim = 2);

/// Revolved mesh: a disc when rho0 == 0, an annulus otherwise. Heights are shifted by u_offset.
SpacelikeGraph revolve(const RotationalProfile& prof, int resolution, double u_offset = 0.0,
                       std::optional<SupportSurface> support = std::nullopt);

// --- perturbations -------------------------------------------------------------------

/**
 * Adds (1 - rho^2)^2 [a0 + sum_{m<=3} rho^m (a_m cos m phi + b_m sin m phi)] to
 * interior heights, with rho the normalized planar radius and coefficients
 * drawn from the seed, scaled so the largest change equals `amplitude`.
 */
SpacelikeGraph perturb(const SpacelikeGraph& g, double amplitude, std::uint64_t seed);

}  // namespace lcap
