#include "lcap/variational.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace lcap {

using kernels::Exec;

namespace {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(std::span<const double> v) {
  MeanStd out;
  if (v.empty()) return out;
  for (double x : v) out.mean += x;
  out.mean /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(s / static_cast<double>(v.size()));
  return out;
}

// Component of xi along the chart direction, after checking tangency to the support.
double chart_component(const DofModel& m, std::size_t d, double q, const Vec3& p, const Vec3& xi) {
  const Vec3 n_sigma = surface_normal(m.support(), p);
  const double scale = std::sqrt(dot(xi, xi) * dot(n_sigma, n_sigma));
  if (std::abs(inner(n_sigma, xi)) > kTangentTolerance * std::max(scale, 1e-300)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "inadmissible variation: <N_Sigma, xi> = " << inner(n_sigma, xi) << " at boundary vertex "
        << m.vertex_of(d);
    throw Error(msg.str());
  }
  const Vec3 tq = m.dposition(d, q);
  return inner(xi, tq) / inner(tq, tq);
}

// Direction in DOF space generated by xi: vertical normal-equivalent inside, chart component on the boundary.
std::vector<double> dof_direction(const DofModel& m, const SpacelikeGraph& g, std::span<const double> x,
                                  const std::vector<Vec3>& N, const VariationField& f) {
  if (f.xi.size() != g.vertex_count()) throw Error("variation field size does not match the mesh");
  const auto pos = g.positions();
  std::vector<double> dir(m.size(), 0.0);
  for (std::size_t d = 0; d < m.size(); ++d) {
    const int v = m.vertex_of(d);
    if (m.is_boundary_dof(d))
      dir[d] = chart_component(m, d, x[d], pos[v], f.xi[v]);
    else
      dir[d] = -inner(N[v], f.xi[v]) / N[v].z;
  }
  return dir;
}

}  // namespace

EnergyBreakdown energy(const SpacelikeGraph& g, const SupportSurface& s, double lambda) {
  EnergyBreakdown e;
  e.surface_area = area(g);
  e.wetted_area = wetted_area(g, s);
  e.lambda = lambda;
  e.energy = e.surface_area + lambda * e.wetted_area;
  e.volume = algebraic_volume(g);
  return e;
}

double enclosed_volume(const SpacelikeGraph& g, const SupportSurface& s) {
  const DofModel m(g, s);
  const auto x = m.values(g);
  const std::span<const double> q = std::span<const double>(x).subspan(m.interior_count(), m.boundary_count());
  return algebraic_volume(g) - m.chart().support_volume(q, m.boundary_angles());
}

// --- DofModel ----------------------------------------------------------------

DofModel::DofModel(const SpacelikeGraph& g, const SupportSurface& s)
    : topo_(g.topology()), chart_(s), base_(g.positions().begin(), g.positions().end()) {
  if (g.loops().size() != 1) throw Error("DofModel: only disc domains (one boundary loop) are supported");
  const auto interior = g.interior();
  vertex_of_.assign(interior.begin(), interior.end());
  n_interior_ = vertex_of_.size();
  for (int v : g.outer_loop()) {
    if (!on_surface(s, base_[v], 1e-8)) throw Error("DofModel: boundary vertex is off the support");
    vertex_of_.push_back(v);
    phi_.push_back(chart_.angle(base_[v]));
  }
  dof_of_.assign(g.vertex_count(), 0);
  for (std::size_t d = 0; d < vertex_of_.size(); ++d) dof_of_[vertex_of_[d]] = d;
}

std::vector<double> DofModel::values(const SpacelikeGraph& g) const {
  const auto pos = g.positions();
  std::vector<double> x(size());
  for (std::size_t d = 0; d < size(); ++d) {
    const Vec3& p = pos[vertex_of_[d]];
    x[d] = is_boundary_dof(d) ? chart_.coordinate(p) : p.z;
  }
  return x;
}

Vec3 DofModel::position(std::size_t d, double value) const {
  if (is_boundary_dof(d)) return chart_.position(value, phi_[d - n_interior_]);
  const Vec3& b = base_[vertex_of_[d]];
  return {b.x, b.y, value};
}

Vec3 DofModel::dposition(std::size_t d, double value) const {
  if (is_boundary_dof(d)) return chart_.tangent(value, phi_[d - n_interior_]);
  return kTimeAxis;
}

std::vector<Vec3> DofModel::positions(std::span<const double> x) const {
  if (x.size() != size()) throw Error("DofModel: DOF vector has the wrong size");
  std::vector<Vec3> pos = base_;
  for (std::size_t d = 0; d < size(); ++d) pos[vertex_of_[d]] = position(d, x[d]);
  return pos;
}

SpacelikeGraph DofModel::graph(std::span<const double> x, double delta_space) const {
  return SpacelikeGraph::from_positions(topo_, positions(x), chart_.surface(), delta_space);
}

DiscreteGradients discrete_gradients(const DofModel& m, std::span<const double> x, Exec exec) {
  const auto pos = m.positions(x);
  const auto& tris = m.topology()->tris;
  std::vector<kernels::AreaTerm> at(tris.size());
  std::vector<kernels::VolumeTerm> vt(tris.size());
  kernels::area_terms(pos, tris, at, exec);
  kernels::volume_terms(pos, tris, vt, exec);
  std::vector<double> a(tris.size()), v(tris.size());
  std::vector<std::array<Vec3, 3>> ga(tris.size()), gv(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    a[t] = at[t].area;
    v[t] = vt[t].volume;
    ga[t] = at[t].grad;
    gv[t] = vt[t].grad;
  }
  const auto dA = kernels::scatter(tris, ga, pos.size());
  const auto dV = kernels::scatter(tris, gv, pos.size());

  DiscreteGradients out;
  out.area = kernels::ordered_sum(a);
  out.volume = kernels::ordered_sum(v);
  out.dA.resize(m.size());
  out.dV.resize(m.size());
  out.dW.assign(m.size(), 0.0);
  for (std::size_t d = 0; d < m.size(); ++d) {
    const int vtx = m.vertex_of(d);
    if (m.is_boundary_dof(d)) {
      const Vec3 t = m.dposition(d, x[d]);
      out.dA[d] = dot(dA[vtx], t);
      out.dV[d] = dot(dV[vtx], t);
    } else {
      out.dA[d] = dA[vtx].z;
      out.dV[d] = dV[vtx].z;
    }
  }
  const std::size_t nb = m.boundary_count();
  const std::span<const double> q = x.subspan(m.interior_count(), nb);
  out.wetted = m.chart().wetted_area(q, m.boundary_angles());
  const auto dW = m.chart().wetted_gradient(q, m.boundary_angles());
  for (std::size_t k = 0; k < nb; ++k) out.dW[m.interior_count() + k] = dW[k];
  out.volume -= m.chart().support_volume(q, m.boundary_angles());
  const auto dVs = m.chart().support_volume_gradient(q, m.boundary_angles());
  for (std::size_t k = 0; k < nb; ++k) out.dV[m.interior_count() + k] -= dVs[k];
  return out;
}

std::vector<double> weak_contact_values(const DofModel& m, const DiscreteGradients& g, double H_bar) {
  std::vector<double> c(m.boundary_count());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const std::size_t d = m.interior_count() + k;
    c[k] = -(g.dA[d] - 2.0 * H_bar * g.dV[d]) / g.dW[d];
  }
  return c;
}

// --- first variations ----------------------------------------------------------

double first_variation_volume(const SpacelikeGraph& g, const VariationField& f) {
  if (f.xi.size() != g.vertex_count()) throw Error("variation field size does not match the mesh");
  const auto N = future_normal(g);
  const auto M = dual_masses(g);
  double total = 0.0;
  for (int v : g.interior()) total += -inner(N[v], f.xi[v]) * (M[v] / N[v].z);
  bool boundary_moves = false;
  for (int v : g.outer_loop()) boundary_moves = boundary_moves || dot(f.xi[v], f.xi[v]) > 0.0;
  if (!boundary_moves) return total;
  if (!g.support()) throw Error("first_variation_volume: boundary variation needs a support surface");
  const DofModel m(g, *g.support());
  const auto x = m.values(g);
  const auto grads = discrete_gradients(m, x);
  const auto pos = g.positions();
  for (std::size_t d = m.interior_count(); d < m.size(); ++d) {
    const int v = m.vertex_of(d);
    total += chart_component(m, d, x[d], pos[v], f.xi[v]) * grads.dV[d];
  }
  return total;
}

double first_variation_energy(const SpacelikeGraph& g, const SupportSurface& s, double lambda,
                              const VariationField& f) {
  const DofModel m(g, s);
  const auto x = m.values(g);
  const auto N = future_normal(g);
  const auto dir = dof_direction(m, g, x, N, f);
  const auto grads = discrete_gradients(m, x);
  const auto H = mean_curvature(g);
  const auto Mass = dual_masses(g);

  double interior = 0.0;
  double H_bar = 0.0;
  for (std::size_t d = 0; d < m.interior_count(); ++d) {
    const int v = m.vertex_of(d);
    // -2 H <N,xi> dA_i with dA_i = M_i / N_i.z and dir = -<N,xi> / N.z.
    interior += 2.0 * H[v] * Mass[v] * dir[d];
    H_bar += H[v];
  }
  H_bar /= static_cast<double>(std::max<std::size_t>(1, m.interior_count()));

  const auto c = weak_contact_values(m, grads, H_bar);
  double boundary = 0.0;
  for (std::size_t k = 0; k < m.boundary_count(); ++k) {
    const std::size_t d = m.interior_count() + k;
    const double normal_part = -dir[d] * grads.dV[d];        // <N,xi> dA on the boundary cell
    const double conormal_part = -dir[d] * grads.dW[d];      // <nu_Sigma, xi> ds
    boundary += -2.0 * H_bar * normal_part - (lambda - c[k]) * conormal_part;
  }
  return interior + boundary;
}

double first_variation_energy_frames(const SpacelikeGraph& g, const SupportSurface& s, double lambda,
                                     const VariationField& f) {
  const DofModel m(g, s);
  const auto x = m.values(g);
  const auto N = future_normal(g);
  (void)dof_direction(m, g, x, N, f);  // admissibility
  const auto H = mean_curvature(g);
  const auto Mass = dual_masses(g);
  double interior = 0.0;
  for (int v : g.interior()) interior += -2.0 * H[v] * inner(N[v], f.xi[v]) * (Mass[v] / N[v].z);

  const auto frames = boundary_frames(g, s);
  const auto pos = g.positions();
  const auto& loop = g.outer_loop();
  const std::size_t K = loop.size();
  double boundary = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const Vec3 back = pos[loop[k]] - pos[loop[(k + K - 1) % K]];
    const Vec3 fwd = pos[loop[(k + 1) % K]] - pos[loop[k]];
    const double ds = 0.5 * (std::sqrt(inner(back, back)) + std::sqrt(inner(fwd, fwd)));
    const BoundaryFrame& fr = frames[k];
    const double m_k = inner(fr.N, fr.N_sigma);
    boundary += -(lambda - m_k) * inner(fr.nu_sigma, f.xi[fr.vertex]) * ds;
  }
  return interior + boundary;
}

SpacelikeGraph deform(const SpacelikeGraph& g, const SupportSurface& s, const VariationField& f, double t) {
  const DofModel m(g, s);
  auto x = m.values(g);
  const auto N = future_normal(g);
  const auto dir = dof_direction(m, g, x, N, f);
  for (std::size_t d = 0; d < x.size(); ++d) x[d] += t * dir[d];
  return m.graph(x, 0.0);
}

VariationField random_admissible_field(const SpacelikeGraph& g, const SupportSurface& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::array<double, 4> a{}, b{}, c{}, e{};
  for (int k = 0; k < 4; ++k) {
    a[k] = uni(rng);
    b[k] = uni(rng);
    c[k] = uni(rng);
    e[k] = uni(rng);
  }
  const Domain& dom = g.domain();
  const double R = std::max(dom.r_out, 1e-300);
  const DofModel m(g, s);
  const auto x = m.values(g);
  const auto pos = g.positions();
  VariationField f;
  f.xi.assign(g.vertex_count(), Vec3{});
  for (std::size_t d = 0; d < m.size(); ++d) {
    const int v = m.vertex_of(d);
    const double phi = std::atan2(pos[v].y - dom.cy, pos[v].x - dom.cx);
    if (m.is_boundary_dof(d)) {
      double alpha = 0.0;
      for (int k = 0; k < 4; ++k) alpha += c[k] * std::cos(k * phi) + e[k] * std::sin(k * phi);
      const Vec3 tq = m.dposition(d, x[d]);
      f.xi[v] = tq * (alpha / std::sqrt(std::abs(inner(tq, tq))));
    } else {
      const double rho = std::hypot(pos[v].x - dom.cx, pos[v].y - dom.cy) / R;
      double w = 0.0;
      for (int k = 0; k < 4; ++k) w += std::pow(rho, k) * (a[k] * std::cos(k * phi) + b[k] * std::sin(k * phi));
      f.xi[v] = Vec3{0.0, 0.0, w};
    }
  }
  return f;
}

// --- stationarity --------------------------------------------------------------

StationarityReport stationarity_report(const SpacelikeGraph& g, const SupportSurface& s) {
  StationarityReport r;
  const auto H = mean_curvature(g);
  for (int v : g.interior()) {
    r.interior_ids.push_back(v);
    r.H_values.push_back(H[v]);
  }
  const auto hs = mean_std(r.H_values);
  r.H_mean = hs.mean;
  r.H_std = hs.std;

  const DofModel m(g, s);
  const auto x = m.values(g);
  const auto grads = discrete_gradients(m, x);
  r.angle_values = weak_contact_values(m, grads, r.H_mean);
  for (std::size_t k = 0; k < m.boundary_count(); ++k) r.boundary_ids.push_back(m.vertex_of(m.interior_count() + k));
  const auto as = mean_std(r.angle_values);
  r.angle_mean = as.mean;
  r.angle_std = as.std;

  for (const auto& fr : boundary_frames(g, s)) r.frame_angle_values.push_back(inner(fr.N, fr.N_sigma));
  const auto fs = mean_std(r.frame_angle_values);
  r.frame_angle_mean = fs.mean;
  r.frame_angle_std = fs.std;
  r.residual = std::max(r.H_std, r.angle_std);
  return r;
}

std::string report_csv(const StationarityReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "vertex,quantity,value\n";
  for (std::size_t i = 0; i < r.H_values.size(); ++i) out << r.interior_ids[i] << ",H," << r.H_values[i] << "\n";
  for (std::size_t k = 0; k < r.angle_values.size(); ++k)
    out << r.boundary_ids[k] << ",contact," << r.angle_values[k] << "\n";
  for (std::size_t k = 0; k < r.frame_angle_values.size(); ++k)
    out << r.boundary_ids[k] << ",frame_angle," << r.frame_angle_values[k] << "\n";
  return out.str();
}

std::string report_summary(const StationarityReport& r) {
  std::ostringstream out;
  out.precision(10);
  out << "H_mean=" << r.H_mean << " H_std=" << r.H_std << " contact_mean=" << r.angle_mean
      << " contact_std=" << r.angle_std << " frame_angle_mean=" << r.frame_angle_mean
      << " frame_angle_std=" << r.frame_angle_std << " residual=" << r.residual;
  return out.str();
}

double lagrange_multiplier(const StationarityReport& r, double threshold) {
  if (!(r.residual <= threshold)) {
    std::ostringstream msg;
    msg << "lagrange_multiplier: surface is not stationary (residual " << r.residual << " > " << threshold << ")";
    throw Error(msg.str());
  }
  return -2.0 * r.H_mean;
}

double lagrange_multiplier(const SpacelikeGraph& g, double threshold) {
  if (g.support()) return lagrange_multiplier(stationarity_report(g, *g.support()), threshold);
  StationarityReport r;
  const auto H = mean_curvature(g);
  for (int v : g.interior()) r.H_values.push_back(H[v]);
  const auto hs = mean_std(r.H_values);
  r.H_mean = hs.mean;
  r.H_std = hs.std;
  r.residual = hs.std;
  return lagrange_multiplier(r, threshold);
}

}  // namespace lcap
