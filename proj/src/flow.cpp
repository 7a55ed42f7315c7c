#include "lcap/flow.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

namespace lcap {

using kernels::Exec;
using SpMat = Eigen::SparseMatrix<double>;

void check_admissible_lambda(const SupportSurface& s, double lambda) {
  if (support_sign(s) == CausalSign::spacelike_support() && lambda > -1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "inadmissible lambda for spacelike support: lambda = " << lambda << " but <N,N_Sigma> <= -1";
    throw Error(msg.str());
  }
}

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kNewtonShift = 1e-5;
constexpr double kRemeshBand = 0.8;
constexpr double kRemeshTight = 0.02;
constexpr int kMaxRemesh = 50;
constexpr int kMaxHalvings = 7;
constexpr std::size_t kMeritWindow = 5;
constexpr double kAccelStep = 1e-3;
// Acceleration is dropped when 2|a| exceeds this multiple of |dx|.
constexpr double kAccelRatio = 3.0;

struct Evaluation {
  DiscreteGradients grads;
  double mu = 0.0;
  std::vector<double> D;     // row scaling
  std::vector<double> raw;   // unscaled stationarity residual
  std::vector<double> r;     // D * raw
  double merit = 0.0;
  double max_r = 0.0;
  double stat_residual = 0.0;
};

class Problem {
 public:
  Problem(const DofModel& m, const SolveOptions& o) : m_(m), o_(o), volume_mode_(o.volume_target.has_value()) {}

  bool volume_mode() const { return volume_mode_; }

  // Every triangle keeps its planar orientation and the spacelike margin.
  bool admissible(std::span<const double> x) const {
    const auto pos = m_.positions(x);
    for (const auto& t : m_.topology()->tris) {
      const Vec3& a = pos[t[0]];
      const Vec3& b = pos[t[1]];
      const Vec3& c = pos[t[2]];
      if (!(kernels::planar_cross(a, b, c) > 0.0)) return false;
      const auto g = kernels::triangle_slope(a, b, c);
      if (!(std::hypot(g[0], g[1]) <= 1.0 - o_.delta_space)) return false;
    }
    return true;
  }

  // Exact constant shift of the interior heights onto the target volume.
  void project_volume(std::vector<double>& x) const {
    if (!volume_mode_) return;
    const auto g = discrete_gradients(m_, x, o_.exec);
    double mass = 0.0;
    for (std::size_t d = 0; d < m_.interior_count(); ++d) mass += g.dV[d];
    const double shift = (*o_.volume_target - g.volume) / mass;
    for (std::size_t d = 0; d < m_.interior_count(); ++d) x[d] += shift;
  }

  Evaluation evaluate(std::span<const double> x) const {
    Evaluation e;
    e.grads = discrete_gradients(m_, x, o_.exec);
    const auto& G = e.grads;
    const std::size_t n = m_.size();
    std::vector<double> D(n), gA(n);
    for (std::size_t d = 0; d < n; ++d) {
      D[d] = m_.is_boundary_dof(d) ? 1.0 / G.dW[d] : 1.0 / (2.0 * G.dV[d]);
      gA[d] = G.dA[d] + o_.lambda * G.dW[d];
    }
    if (volume_mode_) {
      double num = 0.0, den = 0.0;
      for (std::size_t d = 0; d < n; ++d) {
        num += D[d] * D[d] * gA[d] * G.dV[d];
        den += D[d] * D[d] * G.dV[d] * G.dV[d];
      }
      e.mu = -num / den;
    } else {
      e.mu = -2.0 * *o_.H_target;
    }
    e.r.resize(n);
    e.raw.resize(n);
    for (std::size_t d = 0; d < n; ++d) {
      e.raw[d] = gA[d] + e.mu * G.dV[d];
      e.r[d] = D[d] * e.raw[d];
      e.merit += e.r[d] * e.r[d];
      e.max_r = std::max(e.max_r, std::abs(e.r[d]));
    }
    e.D = std::move(D);
    // Report-style residual: spread of H inside and of the weak contact values.
    const std::size_t ni = m_.interior_count();
    double h_mean = 0.0;
    for (std::size_t d = 0; d < ni; ++d) h_mean += G.dA[d] / (2.0 * G.dV[d]);
    h_mean /= static_cast<double>(std::max<std::size_t>(ni, 1));
    double h_var = 0.0;
    for (std::size_t d = 0; d < ni; ++d) {
      const double dh = G.dA[d] / (2.0 * G.dV[d]) - h_mean;
      h_var += dh * dh;
    }
    const auto c = weak_contact_values(m_, G, h_mean);
    double c_mean = 0.0;
    for (double v : c) c_mean += v;
    c_mean /= static_cast<double>(std::max<std::size_t>(c.size(), 1));
    double c_var = 0.0;
    for (double v : c) c_var += (v - c_mean) * (v - c_mean);
    e.stat_residual = std::max(std::sqrt(h_var / std::max<std::size_t>(ni, 1)),
                               std::sqrt(c_var / std::max<std::size_t>(c.size(), 1)));
    return e;
  }

  // Hessian of area + lambda W + mu V in DOF space. Area and graph-volume parts
  // are central differences of the exact per-triangle gradients; the chart
  // terms (W and the support volume) are analytic.
  SpMat hessian(std::span<const double> x, double mu) const {
    const auto& tris = m_.topology()->tris;
    using Block = std::array<double, 9>;
    std::vector<Block> blocks(tris.size());
    auto local_gradient = [&](const std::array<std::size_t, 3>& d, const std::array<double, 3>& v) {
      const Vec3 a = m_.position(d[0], v[0]);
      const Vec3 b = m_.position(d[1], v[1]);
      const Vec3 c = m_.position(d[2], v[2]);
      const auto at = kernels::triangle_area_term(a, b, c);
      const auto vt = kernels::triangle_volume_term(a, b, c);
      std::array<double, 3> g{};
      for (int i = 0; i < 3; ++i) g[i] = dot(at.grad[i] + mu * vt.grad[i], m_.dposition(d[i], v[i]));
      return g;
    };
    auto block_of = [&](long t) {
      const auto& tri = tris[t];
      const std::array<std::size_t, 3> d{m_.dof_of(tri[0]), m_.dof_of(tri[1]), m_.dof_of(tri[2])};
      const std::array<double, 3> v{x[d[0]], x[d[1]], x[d[2]]};
      Block blk{};
      for (int j = 0; j < 3; ++j) {
        auto vp = v, vm = v;
        vp[j] += kFdStep;
        vm[j] -= kFdStep;
        const auto gp = local_gradient(d, vp);
        const auto gm = local_gradient(d, vm);
        for (int i = 0; i < 3; ++i) blk[3 * i + j] = (gp[i] - gm[i]) / (2.0 * kFdStep);
      }
      return blk;
    };
    const long nt = static_cast<long>(tris.size());
    if (o_.exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
      for (long t = 0; t < nt; ++t) blocks[t] = block_of(t);
    } else {
      for (long t = 0; t < nt; ++t) blocks[t] = block_of(t);
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(tris.size() * 9 + 2 * m_.boundary_count());
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const auto& tri = tris[t];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          trip.emplace_back(static_cast<int>(m_.dof_of(tri[i])), static_cast<int>(m_.dof_of(tri[j])),
                            blocks[t][3 * i + j]);
    }
    const std::size_t ni = m_.interior_count();
    const std::size_t nb = m_.boundary_count();
    const auto wh = m_.chart().wetted_hessian(x.subspan(ni, nb), m_.boundary_angles());
    const auto vh = m_.chart().support_volume_hessian(x.subspan(ni, nb), m_.boundary_angles());
    for (std::size_t k = 0; k < nb; ++k) {
      const int a = static_cast<int>(ni + k);
      const int b = static_cast<int>(ni + (k + 1) % nb);
      trip.emplace_back(a, a, o_.lambda * wh.diag[k] - mu * vh.diag[k]);
      const double off = o_.lambda * wh.next[k] - mu * vh.next[k];
      if (off != 0.0) {
        trip.emplace_back(a, b, off);
        trip.emplace_back(b, a, off);
      }
    }
    const int n = static_cast<int>(m_.size());
    SpMat H(n, n);
    H.setFromTriplets(trip.begin(), trip.end());
    SpMat Ht = H.transpose();
    return SpMat(0.5 * (H + Ht));
  }

 private:
  const DofModel& m_;
  const SolveOptions& o_;
  bool volume_mode_;
};

}  // namespace

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out.precision(17);
  out << "iter,energy,area,wetted,volume,residual\n";
  for (const auto& r : trace)
    out << r.iter << "," << r.energy << "," << r.area << "," << r.wetted << "," << r.volume << "," << r.residual
        << "\n";
  return out.str();
}

namespace {

TraceRow trace_row(int iter, const Evaluation& e, double lambda) {
  TraceRow row;
  row.iter = iter;
  row.area = e.grads.area;
  row.wetted = e.grads.wetted;
  row.energy = e.grads.area + lambda * e.grads.wetted;
  row.volume = e.grads.volume;
  row.residual = e.stat_residual;
  return row;
}


// Interior rings rescaled along every sector ray so that ring j sits at j/n of
// the current boundary radius; heights come from local cubic interpolation in
// the ray parameter. Returns nothing when the layout is still within `band` of
// uniform spacing or when a boundary vertex has left its ray.
std::optional<SpacelikeGraph> ray_remesh(const SpacelikeGraph& g, double band) {
  const Domain& dom = g.domain();
  if (dom.kind != Domain::Kind::Disc) return std::nullopt;
  const int n = dom.rings;
  const int K = dom.sectors;
  if (n < 4) return std::nullopt;
  const auto pos = g.positions();
  auto radius = [&](int v) { return std::hypot(pos[v].x - dom.cx, pos[v].y - dom.cy); };

  bool needed = false;
  for (int k = 0; k < K; ++k) {
    const int b = dom.index(n, k);
    const double theta = dom.sector_angle(k);
    const double cross = (pos[b].x - dom.cx) * std::sin(theta) - (pos[b].y - dom.cy) * std::cos(theta);
    if (std::abs(cross) > 1e-9 * std::max(1.0, radius(b))) return std::nullopt;
    const double gap = radius(b) - radius(dom.index(n - 1, k));
    const double nominal = radius(b) / n;
    if (std::abs(gap / nominal - 1.0) > band) needed = true;
  }
  if (!needed) return std::nullopt;

  std::vector<Vec3> out(pos.begin(), pos.end());
  std::vector<double> rho(n + 1), u(n + 1);
  for (int k = 0; k < K; ++k) {
    for (int j = 0; j <= n; ++j) {
      const int v = dom.index(j, k);
      rho[j] = radius(v);
      u[j] = pos[v].z;
    }
    const double theta = dom.sector_angle(k);
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    for (int j = 1; j < n; ++j) {
      const double target = rho[n] * j / n;
      int hi = static_cast<int>(std::lower_bound(rho.begin(), rho.end(), target) - rho.begin());
      hi = std::clamp(hi, 1, n);
      const int first = std::clamp(hi - 2, 0, n - 3);
      double value = 0.0;
      for (int a = first; a < first + 4; ++a) {
        double w = 1.0;
        for (int b = first; b < first + 4; ++b)
          if (b != a) w *= (target - rho[b]) / (rho[a] - rho[b]);
        value += w * u[a];
      }
      out[dom.index(j, k)] = Vec3{dom.cx + target * c, dom.cy + target * sn, value};
    }
  }
  return SpacelikeGraph::from_positions(g.topology(), std::move(out), *g.support(), 0.0);
}
}  // namespace

SolveResult solve_stationary(const SupportSurface& s, const SolveOptions& opts, const SpacelikeGraph& init) {
  if (opts.volume_target.has_value() == opts.H_target.has_value())
    throw Error("solve_stationary: set exactly one of volume_target and H_target");
  if (!(opts.residual_tol > 0.0)) throw Error("solve_stationary: residual_tol must be positive");
  if (!(opts.step0 > 0.0)) throw Error("solve_stationary: step0 must be positive");
  if (opts.max_iters < 0) throw Error("solve_stationary: max_iters must be non-negative");
  check_admissible_lambda(s, opts.lambda);

  auto m = std::make_unique<DofModel>(init, s);
  auto p = std::make_unique<Problem>(*m, opts);
  const int n = static_cast<int>(m->size());
  std::vector<double> x = m->values(init);
  p->project_volume(x);
  if (!p->admissible(x)) throw Error("solve_stationary: initial surface violates the spacelike margin");
  int remeshes = 0;
  // Re-lays the interior rings when the boundary has drifted away from them.
  auto relayout = [&](double band) {
    if (remeshes >= kMaxRemesh) return false;
    auto fresh = ray_remesh(m->graph(x, 0.0), band);
    if (!fresh) return false;
    auto m2 = std::make_unique<DofModel>(*fresh, s);
    auto p2 = std::make_unique<Problem>(*m2, opts);
    std::vector<double> x2 = m2->values(*fresh);
    p2->project_volume(x2);
    if (!p2->admissible(x2)) return false;
    m = std::move(m2);
    p = std::move(p2);
    x = std::move(x2);
    ++remeshes;
    return true;
  };

  auto check_volume = [&](const Evaluation& e) {
    if (!opts.volume_target) return;
    const double V0 = *opts.volume_target;
    if (std::abs(e.grads.volume - V0) > 1e-8 * std::abs(V0) + 1e-12)
      throw Error("solve_stationary: volume projection diverged");
  };

  Evaluation e = p->evaluate(x);
  check_volume(e);
  SolveResult res{init, {}, {}, false, 0, 0.0};
  res.trace.push_back(trace_row(0, e, opts.lambda));

  double nu = opts.step0;
  int iter = 0;
  std::deque<double> recent{e.merit};
  while (e.max_r >= opts.residual_tol && iter < opts.max_iters) {
    bool accepted = false;
    bool only_spacelike_failures = true;
    std::vector<double> xt(x.size());
    Evaluation et;
    // Non-monotone reference: the worst merit among the last few accepted iterates.
    const double reference = *std::max_element(recent.begin(), recent.end());

    Eigen::VectorXd accel;
    auto attempt = [&](const Eigen::VectorXd& dx, double alpha) {
      for (int d = 0; d < n; ++d) {
        xt[d] = x[d] + alpha * dx[d];
        if (accel.size() == n) xt[d] += 0.5 * alpha * alpha * accel[d];
      }
      p->project_volume(xt);
      if (!p->admissible(xt)) return false;
      only_spacelike_failures = false;
      et = p->evaluate(xt);
      // Scaling frozen at the current iterate, so that the Newton direction is a descent direction.
      double frozen = 0.0;
      for (int d = 0; d < n; ++d) frozen += (e.D[d] * et.raw[d]) * (e.D[d] * et.raw[d]);
      return frozen < reference;
    };

    const SpMat H = p->hessian(x, e.mu);
    Eigen::VectorXd g(n);
    for (int d = 0; d < n; ++d) g[d] = e.grads.dA[d] + opts.lambda * e.grads.dW[d] + e.mu * e.grads.dV[d];
    double hmax = 0.0;
    for (int d = 0; d < n; ++d) hmax = std::max(hmax, std::abs(H.coeff(d, d)));

    // Newton system, bordered by the volume constraint in volume mode.
    const int dim = opts.volume_target ? n + 1 : n;
    using Lu = Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>;
    auto factor = [&](double shift, Lu& lu) {
      std::vector<Eigen::Triplet<double>> trip;
      trip.reserve(static_cast<std::size_t>(H.nonZeros()) + 3 * static_cast<std::size_t>(n));
      for (int k = 0; k < H.outerSize(); ++k)
        for (SpMat::InnerIterator it(H, k); it; ++it) trip.emplace_back(it.row(), it.col(), it.value());
      if (shift != 0.0)
        for (int d = 0; d < n; ++d) trip.emplace_back(d, d, shift);
      if (opts.volume_target)
        for (int d = 0; d < n; ++d) {
          trip.emplace_back(d, n, e.grads.dV[d]);
          trip.emplace_back(n, d, e.grads.dV[d]);
        }
      SpMat K(dim, dim);
      K.setFromTriplets(trip.begin(), trip.end());
      K.makeCompressed();
      lu.analyzePattern(K);
      lu.factorize(K);
      return lu.info() == Eigen::Success;
    };
    Eigen::VectorXd b(dim);
    b.head(n) = -g;
    if (opts.volume_target) b[n] = *opts.volume_target - e.grads.volume;

    // Second directional derivative of the stationarity system along dx, for
    // the geodesic acceleration term. Solutions come in near-degenerate
    // families (Lorentz boosts of the support, free boundaries in a plane),
    // and the straight Newton line leaves the curved family quickly.
    auto acceleration = [&](const Eigen::VectorXd& dx, Lu& lu) {
      Eigen::VectorXd none;
      const double h = std::min(1.0, kAccelStep / std::max(dx.cwiseAbs().maxCoeff(), 1e-300));
      Eigen::VectorXd second = Eigen::VectorXd::Zero(dim);
      for (int sgn : {1, -1}) {
        std::vector<double> xs(x);
        for (int d = 0; d < n; ++d) xs[d] += sgn * h * dx[d];
        const auto G = discrete_gradients(*m, xs, opts.exec);
        for (int d = 0; d < n; ++d) second[d] += G.dA[d] + opts.lambda * G.dW[d] + e.mu * G.dV[d] - g[d];
        if (opts.volume_target) second[n] += G.volume - e.grads.volume;
      }
      const Eigen::VectorXd a = lu.solve(-second / (h * h));
      if (lu.info() != Eigen::Success || !a.allFinite()) return none;
      return Eigen::VectorXd(a.head(n));
    };

    // A second attempt shifts the diagonal, which tames the flat directions.
    Lu plain;
    const bool have_plain = factor(0.0, plain);
    for (double shift : {0.0, kNewtonShift * hmax}) {
      if (accepted) break;
      Lu shifted;
      Lu* lu = &plain;
      if (shift != 0.0) {
        if (!factor(shift, shifted)) continue;
        lu = &shifted;
      } else if (!have_plain) {
        continue;
      }
      const Eigen::VectorXd sol = lu->solve(b);
      if (lu->info() != Eigen::Success || !sol.allFinite()) continue;
      const Eigen::VectorXd dx = sol.head(n);
      accel = have_plain ? acceleration(dx, plain) : Eigen::VectorXd();
      if (accel.size() == n && 2.0 * accel.norm() > kAccelRatio * dx.norm()) accel.resize(0);
      double alpha = 1.0;
      for (int tries = 0; tries < kMaxHalvings && !accepted; ++tries, alpha *= 0.5) accepted = attempt(dx, alpha);
      accel.resize(0);
    }

    // Levenberg-Marquardt on the scaled residual.
    if (!accepted) {
      const auto& D = e.D;
      Eigen::VectorXd dvec(n), r(n);
      for (int d = 0; d < n; ++d) {
        dvec[d] = D[d];
        r[d] = e.r[d];
      }
      const SpMat J = dvec.asDiagonal() * H;
      const SpMat Jt = J.transpose();
      SpMat N = Jt * J;
      const Eigen::VectorXd rhs = -(Jt * r);
      Eigen::VectorXd diag = N.diagonal();
      const double floor = 1e-12 * std::max(diag.maxCoeff(), 1e-300);
      for (int tries = 0; tries < 20 && !accepted; ++tries) {
        SpMat A = N;
        for (int d = 0; d < n; ++d) A.coeffRef(d, d) += nu * std::max(diag[d], floor);
        Eigen::SimplicialLDLT<SpMat> ldlt(A);
        if (ldlt.info() == Eigen::Success) {
          const Eigen::VectorXd dx = ldlt.solve(rhs);
          if (dx.allFinite()) accepted = attempt(dx, 1.0);
        }
        if (accepted)
          nu = std::max(nu / 10.0, 1e-15);
        else
          nu *= 10.0;
      }
    }

    if (!accepted) {
      if (relayout(kRemeshTight)) {
        e = p->evaluate(x);
        check_volume(e);
        recent.assign(1, e.merit);
        continue;
      }
      if (only_spacelike_failures)
        throw Error("solve_stationary: spacelike barrier hit with step underflow");
      break;
    }
    x.swap(xt);
    e = std::move(et);
    check_volume(e);
    recent.push_back(e.merit);
    if (recent.size() > kMeritWindow) recent.pop_front();
    ++iter;
    if (relayout(kRemeshBand)) {
      e = p->evaluate(x);
      check_volume(e);
      recent.assign(1, e.merit);
    }
    res.trace.push_back(trace_row(iter, e, opts.lambda));
  }

  res.graph = m->graph(x, 0.0);
  res.report = stationarity_report(res.graph, s);
  res.converged = e.max_r < opts.residual_tol;
  res.iterations = iter;
  res.multiplier = e.mu;
  return res;
}

// --- classification ------------------------------------------------------------

const char* to_string(Classification::Kind k) {
  switch (k) {
    case Classification::Kind::PlanarDisc: return "PlanarDisc";
    case Classification::Kind::HyperbolicCap: return "HyperbolicCap";
    case Classification::Kind::Other: return "Other";
  }
  return "?";
}

namespace {

struct QuadricFit {
  Vec3 p;
  double r = 0.0;
  double rms = std::numeric_limits<double>::infinity();
};

double quadric_rms(std::span<const Vec3> pts, const Vec3& p, double r, double branch) {
  double s = 0.0;
  for (const Vec3& q : pts) {
    const double model = p.z + branch * std::sqrt(r * r + (q.x - p.x) * (q.x - p.x) + (q.y - p.y) * (q.y - p.y));
    s += (q.z - model) * (q.z - model);
  }
  return std::sqrt(s / static_cast<double>(pts.size()));
}

QuadricFit fit_quadric(std::span<const Vec3> pts) {
  QuadricFit best;
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  // Algebraic fit: x^2 + y^2 - z^2 = 2 p1 x + 2 p2 y - 2 p3 z - k, k = <p,p> + r^2.
  Eigen::MatrixXd A(n, 4);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3& q = pts[static_cast<std::size_t>(i)];
    A(i, 0) = 2.0 * q.x;
    A(i, 1) = 2.0 * q.y;
    A(i, 2) = -2.0 * q.z;
    A(i, 3) = -1.0;
    b[i] = q.x * q.x + q.y * q.y - q.z * q.z;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 4) return best;
  const Eigen::Vector4d sol = qr.solve(b);
  Vec3 p{sol[0], sol[1], sol[2]};
  const double r2 = sol[3] - inner(p, p);
  if (!(r2 > 0.0) || !sol.allFinite()) return best;
  double r = std::sqrt(r2);
  double zbar = 0.0;
  for (const Vec3& q : pts) zbar += q.z;
  zbar /= static_cast<double>(pts.size());
  const double branch = zbar >= p.z ? 1.0 : -1.0;

  // Gauss-Newton on the vertical residuals z - p3 -+ sqrt(r^2 + |xy - p12|^2).
  double rms = quadric_rms(pts, p, r, branch);
  for (int it = 0; it < 50; ++it) {
    Eigen::Matrix4d JtJ = Eigen::Matrix4d::Zero();
    Eigen::Vector4d Jtr = Eigen::Vector4d::Zero();
    for (const Vec3& q : pts) {
      const double dx = q.x - p.x, dy = q.y - p.y;
      const double root = std::sqrt(r * r + dx * dx + dy * dy);
      const double res = q.z - p.z - branch * root;
      // d res / d (p1, p2, p3, r)
      const Eigen::Vector4d j(branch * dx / root, branch * dy / root, -1.0, -branch * r / root);
      JtJ += j * j.transpose();
      Jtr += j * res;
    }
    const Eigen::Vector4d step = JtJ.ldlt().solve(-Jtr);
    if (!step.allFinite()) break;
    double t = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 20; ++ls, t *= 0.5) {
      const Vec3 pn{p.x + t * step[0], p.y + t * step[1], p.z + t * step[2]};
      const double rn = r + t * step[3];
      if (!(rn > 0.0)) continue;
      const double rms_n = quadric_rms(pts, pn, rn, branch);
      if (rms_n < rms) {
        p = pn;
        r = rn;
        improved = rms - rms_n > 1e-15 * std::max(rms, 1e-300);
        rms = rms_n;
        break;
      }
    }
    if (!improved) break;
  }
  best.p = p;
  best.r = r;
  best.rms = rms;
  return best;
}

}  // namespace

Classification classify(const SpacelikeGraph& g, double fit_tol) {
  Classification c;
  const auto pts = g.positions();
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3& q = pts[static_cast<std::size_t>(i)];
    A(i, 0) = q.x;
    A(i, 1) = q.y;
    A(i, 2) = 1.0;
    b[i] = q.z;
  }
  const Eigen::Vector3d plane = A.colPivHouseholderQr().solve(b);
  c.plane_a = plane[0];
  c.plane_b = plane[1];
  c.plane_c = plane[2];
  c.plane_rms = std::sqrt((A * plane - b).squaredNorm() / static_cast<double>(n));

  const QuadricFit q = fit_quadric(pts);
  c.p = q.p;
  c.r = q.r;
  c.quadric_rms = q.rms;
  c.diameter = g.diameter();

  const bool plane_wins = c.plane_rms <= c.quadric_rms;
  c.rms_fit = plane_wins ? c.plane_rms : c.quadric_rms;
  if (c.rms_fit < fit_tol * c.diameter)
    c.kind = plane_wins ? Classification::Kind::PlanarDisc : Classification::Kind::HyperbolicCap;
  return c;
}

// --- rotational profiles -----------------------------------------------------------

RotationalProfile::RotationalProfile(double H, double c, double rho0, double rho1, int dim)
    : H_(H), c_(c), rho0_(rho0), rho1_(rho1), dim_(dim) {
  if (dim < 2) throw Error("RotationalProfile: dimension must be at least 2");
  if (!(rho0 >= 0.0 && rho1 > rho0)) throw Error("RotationalProfile: need 0 <= rho0 < rho1");
  if (rho0 == 0.0 && c != 0.0)
    throw Error("RotationalProfile: a range containing rho = 0 with c != 0 has a conical point");
}

double RotationalProfile::slope(double rho) const {
  if (rho == 0.0) return 0.0;
  const double w = (H_ * std::pow(rho, dim_) + c_) / std::pow(rho, dim_ - 1);
  return w / std::sqrt(1.0 + w * w);
}

double RotationalProfile::height(double rho) const {
  if (rho < rho0_ - 1e-14 || rho > rho1_ + 1e-12) throw Error("RotationalProfile: radius outside the profile range");
  if (rho == rho0_) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 15>::integrate([this](double t) { return slope(t); }, rho0_, rho, 15, 1e-14);
}

std::vector<ProfileSample> rotational_cmc_profile(double H, double c, double rho0, double rho1, int n_samples,
                                                  int dim) {
  if (n_samples < 2) throw Error("rotational_cmc_profile: need at least 2 samples");
  const RotationalProfile prof(H, c, rho0, rho1, dim);
  using boost::math::quadrature::gauss_kronrod;
  std::vector<ProfileSample> out(static_cast<std::size_t>(n_samples));
  double u = 0.0;
  double prev = rho0;
  for (int i = 0; i < n_samples; ++i) {
    const double rho = rho0 + (rho1 - rho0) * i / (n_samples - 1);
    if (i > 0)
      u += gauss_kronrod<double, 15>::integrate([&](double t) { return prof.slope(t); }, prev, rho, 15, 1e-14);
    out[static_cast<std::size_t>(i)] = {rho, u};
    prev = rho;
  }
  return out;
}

SpacelikeGraph revolve(const RotationalProfile& prof, int resolution, double u_offset,
                       std::optional<SupportSurface> support) {
  const Domain d = prof.rho0() == 0.0 ? Domain::disc(prof.rho1(), resolution)
                                      : Domain::annulus(prof.rho0(), prof.rho1(), resolution);
  auto topo = make_topology(d);
  std::vector<Vec3> pos(static_cast<std::size_t>(d.vertex_count()));
  using boost::math::quadrature::gauss_kronrod;
  double u = 0.0;
  double prev = d.kind == Domain::Kind::Disc ? 0.0 : d.ring_radius(0);
  for (int j = 0; j <= d.rings; ++j) {
    const double rho = d.ring_radius(j);
    if (rho > prev)
      u += gauss_kronrod<double, 15>::integrate([&](double t) { return prof.slope(t); }, prev, rho, 15, 1e-14);
    prev = rho;
    if (d.kind == Domain::Kind::Disc && j == 0) {
      pos[0] = {d.cx, d.cy, u + u_offset};
      continue;
    }
    for (int k = 0; k < d.sectors; ++k) {
      const double phi = d.sector_angle(k);
      pos[d.index(j, k)] = {d.cx + rho * std::cos(phi), d.cy + rho * std::sin(phi), u + u_offset};
    }
  }
  return SpacelikeGraph::from_positions(std::move(topo), std::move(pos), std::move(support));
}

// --- perturbations -------------------------------------------------------------------

SpacelikeGraph perturb(const SpacelikeGraph& g, double amplitude, std::uint64_t seed) {
  if (amplitude < 0.0) throw Error("perturb: amplitude must be non-negative");
  std::vector<Vec3> pos(g.positions().begin(), g.positions().end());
  if (amplitude == 0.0) return g.with_positions(std::move(pos), 0.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double a0 = uni(rng);
  std::array<double, 4> a{}, b{};
  for (int m = 1; m <= 3; ++m) {
    a[m] = uni(rng);
    b[m] = uni(rng);
  }
  const Domain& d = g.domain();
  std::vector<double> bump(pos.size(), 0.0);
  double peak = 0.0;
  for (int v : g.interior()) {
    const double rho = std::hypot(pos[v].x - d.cx, pos[v].y - d.cy) / d.r_out;
    const double phi = std::atan2(pos[v].y - d.cy, pos[v].x - d.cx);
    double f = a0;
    for (int m = 1; m <= 3; ++m) f += std::pow(rho, m) * (a[m] * std::cos(m * phi) + b[m] * std::sin(m * phi));
    bump[v] = (1.0 - rho * rho) * (1.0 - rho * rho) * f;
    peak = std::max(peak, std::abs(bump[v]));
  }
  if (!(peak > 0.0)) return g.with_positions(std::move(pos), 0.0);
  for (int v : g.interior()) pos[v].z += amplitude * bump[v] / peak;
  try {
    return g.with_positions(std::move(pos));
  } catch (const Error& err) {
    throw Error(std::string("perturb: ") + err.what());
  }
}

}  // namespace lcap
