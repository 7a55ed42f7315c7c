#include "lcap/kernels.hpp"

#include <cmath>

namespace lcap::kernels {

namespace {

constexpr Vec3 eta(const Vec3& v) { return {v.x, v.y, -v.z}; }

template <class Out, class F>
void for_each_triangle(std::span<const Vec3> pos, std::span<const Tri> tris, std::span<Out> out, Exec exec, F f) {
  if (out.size() != tris.size()) throw Error("kernels: output size does not match triangle count");
  const long n = static_cast<long>(tris.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (long t = 0; t < n; ++t) {
      const Tri& tri = tris[t];
      out[t] = f(pos[tri[0]], pos[tri[1]], pos[tri[2]]);
    }
  } else {
    for (long t = 0; t < n; ++t) {
      const Tri& tri = tris[t];
      out[t] = f(pos[tri[0]], pos[tri[1]], pos[tri[2]]);
    }
  }
}

}  // namespace

AreaTerm triangle_area_term(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const double g11 = inner(e1, e1);
  const double g22 = inner(e2, e2);
  const double g12 = inner(e1, e2);
  const double gram = g11 * g22 - g12 * g12;
  AreaTerm out;
  if (!(gram > 0.0)) return out;  // not spacelike; callers validate before use
  out.area = 0.5 * std::sqrt(gram);
  const double s = 1.0 / (4.0 * out.area);
  const Vec3 d1 = eta(g22 * e1 - g12 * e2) * s;
  const Vec3 d2 = eta(g11 * e2 - g12 * e1) * s;
  out.grad = {-(d1 + d2), d1, d2};
  return out;
}

CornerMasses triangle_dual_masses(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double twice = planar_cross(a, b, c);
  const std::array<Vec3, 3> p{a, b, c};
  CornerMasses m{0.0, 0.0, 0.0};
  // Edge (i,j) opposite k contributes |P_i - P_j|^2 cot(k) / 8 to both ends.
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    const double lx = p[i].x - p[j].x, ly = p[i].y - p[j].y;
    const double dot_k = (p[i].x - p[k].x) * (p[j].x - p[k].x) + (p[i].y - p[k].y) * (p[j].y - p[k].y);
    const double w = (lx * lx + ly * ly) * dot_k / (8.0 * twice);
    m[i] += w;
    m[j] += w;
  }
  return m;
}

std::array<double, 2> triangle_slope(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double e1x = b.x - a.x, e1y = b.y - a.y, e2x = c.x - a.x, e2y = c.y - a.y;
  const double du1 = b.z - a.z, du2 = c.z - a.z;
  const double det = e1x * e2y - e1y * e2x;
  return {(du1 * e2y - du2 * e1y) / det, (du2 * e1x - du1 * e2x) / det};
}

VolumeTerm triangle_volume_term(const Vec3& a, const Vec3& b, const Vec3& c) {
  const std::array<Vec3, 3> p{a, b, c};
  const double twice = planar_cross(a, b, c);
  // vol = F / (8 * twice) with F = sum_k L_k D_k S_k.
  double F = 0.0;
  std::array<Vec3, 3> dF{};
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    const double lx = p[i].x - p[j].x, ly = p[i].y - p[j].y;
    const double L = lx * lx + ly * ly;
    const double ax = p[i].x - p[k].x, ay = p[i].y - p[k].y;
    const double bx = p[j].x - p[k].x, by = p[j].y - p[k].y;
    const double D = ax * bx + ay * by;
    const double S = p[i].z + p[j].z;
    F += L * D * S;
    const double LD = L * D, DS = D * S, LS = L * S;
    dF[i] += Vec3{2.0 * lx * DS + bx * LS, 2.0 * ly * DS + by * LS, LD};
    dF[j] += Vec3{-2.0 * lx * DS + ax * LS, -2.0 * ly * DS + ay * LS, LD};
    dF[k] += Vec3{-(ax + bx) * LS, -(ay + by) * LS, 0.0};
  }
  VolumeTerm out;
  const double inv = 1.0 / (8.0 * twice);
  out.volume = F * inv;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    // d(twice)/dP_i for the ccw cycle (i,j,k).
    const double tx = p[j].y - p[k].y;
    const double ty = p[k].x - p[j].x;
    out.grad[i] = Vec3{dF[i].x * inv - out.volume * tx / twice, dF[i].y * inv - out.volume * ty / twice,
                       dF[i].z * inv};
  }
  return out;
}

void area_terms(std::span<const Vec3> pos, std::span<const Tri> tris, std::span<AreaTerm> out, Exec exec) {
  for_each_triangle(pos, tris, out, exec, triangle_area_term);
}

void dual_masses(std::span<const Vec3> pos, std::span<const Tri> tris, std::span<CornerMasses> out, Exec exec) {
  for_each_triangle(pos, tris, out, exec, triangle_dual_masses);
}

void volume_terms(std::span<const Vec3> pos, std::span<const Tri> tris, std::span<VolumeTerm> out, Exec exec) {
  for_each_triangle(pos, tris, out, exec, triangle_volume_term);
}

void slopes(std::span<const Vec3> pos, std::span<const Tri> tris, std::span<double> slope_norm, Exec exec) {
  for_each_triangle(pos, tris, slope_norm, exec, [](const Vec3& a, const Vec3& b, const Vec3& c) {
    const auto g = triangle_slope(a, b, c);
    return std::hypot(g[0], g[1]);
  });
}

double ordered_sum(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

std::vector<double> scatter(std::span<const Tri> tris, std::span<const CornerMasses> corner, std::size_t n_vertices) {
  std::vector<double> out(n_vertices, 0.0);
  for (std::size_t t = 0; t < tris.size(); ++t)
    for (int c = 0; c < 3; ++c) out[tris[t][c]] += corner[t][c];
  return out;
}

std::vector<Vec3> scatter(std::span<const Tri> tris, std::span<const std::array<Vec3, 3>> corner,
                          std::size_t n_vertices) {
  std::vector<Vec3> out(n_vertices);
  for (std::size_t t = 0; t < tris.size(); ++t)
    for (int c = 0; c < 3; ++c) out[tris[t][c]] += corner[t][c];
  return out;
}

}  // namespace lcap::kernels
