#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lcap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default relative tolerance under which a vector is reported lightlike.
inline constexpr double kNullTolerance = 1e-10;

enum class Causal { Spacelike, Lightlike, Timelike };

const char* to_string(Causal c);

/**
 * A point or vector of L^{n+1} with signature (+,...,+,-). The last
 * coordinate is the timelike direction.
 */
class LorentzVector {
 public:
  LorentzVector() = default;
  explicit LorentzVector(std::vector<double> coords) : coords_(std::move(coords)) {}
  LorentzVector(std::initializer_list<double> coords) : coords_(coords) {}

  /// The unit timelike vector a = (0,...,0,1) of L^{dim}.
  static LorentzVector time_axis(std::size_t dim);
  static LorentzVector zero(std::size_t dim) { return LorentzVector(std::vector<double>(dim, 0.0)); }

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  double euclidean_norm2() const;

  LorentzVector& operator+=(const LorentzVector& o);
  LorentzVector& operator-=(const LorentzVector& o);
  LorentzVector& operator*=(double s);

  friend LorentzVector operator+(LorentzVector a, const LorentzVector& b) { return a += b; }
  friend LorentzVector operator-(LorentzVector a, const LorentzVector& b) { return a -= b; }
  friend LorentzVector operator*(LorentzVector a, double s) { return a *= s; }
  friend LorentzVector operator*(double s, LorentzVector a) { return a *= s; }
  friend LorentzVector operator-(LorentzVector a) { return a *= -1.0; }

 private:
  std::vector<double> coords_;
};

/// Sum_{i<n+1} u_i v_i - u_{n+1} v_{n+1}. Throws on dimension mismatch.
double minkowski_inner(const LorentzVector& u, const LorentzVector& v);

/// Sign of <v,v>; |<v,v>| <= tol * |v|^2_E is reported lightlike. Throws on v = 0.
Causal causal_character(const LorentzVector& v, double tol = kNullTolerance);

/// True iff <v,a> < 0. Throws unless v is timelike.
bool is_future_directed(const LorentzVector& v);

/// +1 when the support normal is spacelike (timelike support), -1 when timelike.
struct CausalSign {
  int value = -1;

  static constexpr CausalSign timelike_support() { return {+1}; }
  static constexpr CausalSign spacelike_support() { return {-1}; }
  static CausalSign from_int(int e);

  friend constexpr bool operator==(CausalSign, CausalSign) = default;
};

/**
 * Hyperbolic contact angle from m = <N,N_Sigma>: arcsinh(m) for a timelike
 * support, arccosh(-m) for a spacelike one. The spacelike case rejects
 * m > -1, which no pair of future unit timelike vectors can produce.
 */
double hyperbolic_angle(double m, CausalSign eps);
double hyperbolic_angle(const LorentzVector& N, const LorentzVector& N_sigma, CausalSign eps);

/// N and nu rebuilt in the basis {nu_Sigma, N_Sigma} from s = <N,nu_Sigma>, m = <N,N_Sigma>.
struct FramePair {
  LorentzVector N;
  LorentzVector nu;
};

FramePair frame_from_projections(double s, double m, const LorentzVector& nu_sigma,
                                 const LorentzVector& N_sigma, CausalSign eps,
                                 double tol = 1e-9);

// ---------------------------------------------------------------------------
// Fixed-size L^3 vectors used by the mesh kernels.

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

inline constexpr Vec3 kTimeAxis{0.0, 0.0, 1.0};

constexpr double inner(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y - a.z * b.z; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
/// The vector n with <n,w> = det(a,b,w) for all w; Lorentz-orthogonal to a and b.
constexpr Vec3 lorentz_cross(const Vec3& a, const Vec3& b) {
  Vec3 c = cross(a, b);
  return {c.x, c.y, -c.z};
}
constexpr double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

/// v / sqrt(|<v,v>|). Throws on a null vector.
Vec3 lorentz_normalize(const Vec3& v);

LorentzVector to_lorentz(const Vec3& v);
Vec3 to_vec3(const LorentzVector& v);

}  // namespace lcap
