#include "lcap/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lcap {

const char* to_string(Causal c) {
  switch (c) {
    case Causal::Spacelike: return "spacelike";
    case Causal::Lightlike: return "lightlike";
    case Causal::Timelike: return "timelike";
  }
  return "?";
}

LorentzVector LorentzVector::time_axis(std::size_t dim) {
  if (dim < 2) throw Error("time_axis: dimension must be at least 2");
  std::vector<double> c(dim, 0.0);
  c.back() = 1.0;
  return LorentzVector(std::move(c));
}

double LorentzVector::euclidean_norm2() const {
  double s = 0.0;
  for (double c : coords_) s += c * c;
  return s;
}

LorentzVector& LorentzVector::operator+=(const LorentzVector& o) {
  if (o.size() != size()) throw Error("LorentzVector: dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

LorentzVector& LorentzVector::operator-=(const LorentzVector& o) {
  if (o.size() != size()) throw Error("LorentzVector: dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

LorentzVector& LorentzVector::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

double minkowski_inner(const LorentzVector& u, const LorentzVector& v) {
  if (u.size() != v.size()) {
    std::ostringstream msg;
    msg << "minkowski_inner: dimension mismatch (" << u.size() << " vs " << v.size() << ")";
    throw Error(msg.str());
  }
  if (u.size() < 2) throw Error("minkowski_inner: dimension must be at least 2");
  const std::size_t last = u.size() - 1;
  double s = 0.0;
  for (std::size_t i = 0; i < last; ++i) s += u[i] * v[i];
  return s - u[last] * v[last];
}

Causal causal_character(const LorentzVector& v, double tol) {
  const double e2 = v.euclidean_norm2();
  if (e2 == 0.0) throw Error("causal_character: zero vector");
  const double q = minkowski_inner(v, v);
  if (std::abs(q) <= tol * e2) return Causal::Lightlike;
  return q > 0.0 ? Causal::Spacelike : Causal::Timelike;
}

bool is_future_directed(const LorentzVector& v) {
  if (causal_character(v) != Causal::Timelike)
    throw Error("is_future_directed: vector is not timelike");
  return minkowski_inner(v, LorentzVector::time_axis(v.size())) < 0.0;
}

CausalSign CausalSign::from_int(int e) {
  if (e != 1 && e != -1) throw Error("CausalSign: must be +1 or -1");
  return CausalSign{e};
}

double hyperbolic_angle(double m, CausalSign eps) {
  if (eps.value == 1) return std::asinh(m);
  // Rounding can put -m a hair below 1 for tangent supports.
  if (m > -1.0 + 1e-12) {
    if (m > -1.0 + 1e-9) {
      std::ostringstream msg;
      msg << "hyperbolic_angle: <N,N_Sigma> = " << m
          << " > -1 is impossible for two future unit timelike vectors";
      throw Error(msg.str());
    }
    return 0.0;
  }
  return std::acosh(-m);
}

double hyperbolic_angle(const LorentzVector& N, const LorentzVector& N_sigma, CausalSign eps) {
  if (eps.value == -1 && !is_future_directed(N_sigma))
    throw Error("hyperbolic_angle: spacelike support normal must be future-directed");
  return hyperbolic_angle(minkowski_inner(N, N_sigma), eps);
}

FramePair frame_from_projections(double s, double m, const LorentzVector& nu_sigma,
                                 const LorentzVector& N_sigma, CausalSign eps, double tol) {
  const double e = eps.value;
  const double constraint = e * (m * m - s * s);
  if (std::abs(constraint + 1.0) > tol * std::max(1.0, m * m + s * s)) {
    std::ostringstream msg;
    msg << "frame_from_projections: eps*(m^2-s^2) = " << constraint << ", expected -1";
    throw Error(msg.str());
  }
  FramePair out;
  out.N = (-e * s) * nu_sigma + (e * m) * N_sigma;
  out.nu = (-m) * nu_sigma + s * N_sigma;
  return out;
}

Vec3 lorentz_normalize(const Vec3& v) {
  const double q = inner(v, v);
  if (std::abs(q) <= kNullTolerance * dot(v, v) || dot(v, v) == 0.0)
    throw Error("lorentz_normalize: null vector");
  return v * (1.0 / std::sqrt(std::abs(q)));
}

LorentzVector to_lorentz(const Vec3& v) { return LorentzVector{v.x, v.y, v.z}; }

Vec3 to_vec3(const LorentzVector& v) {
  if (v.size() != 3) throw Error("to_vec3: expected a vector of L^3");
  return {v[0], v[1], v[2]};
}

}  // namespace lcap
