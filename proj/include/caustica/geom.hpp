#pragma once

// Plane geometry and the refraction layer.
//
// Everything is templated over the scalar tower: Rational for the algebraic
// identities (inverse point, conic coefficients, scene normalization) and
// double for anything that needs square roots or trigonometry.

#include <cmath>
#include <optional>
#include <utility>
#include <variant>

#include "caustica/error.hpp"
#include "caustica/rational.hpp"

namespace caustica {

template <class T>
struct Vec2 {
  T x{};
  T y{};

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(const T& s, const Vec2& a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(const Vec2& a, const T& s) { return {a.x * s, a.y * s}; }
  friend Vec2 operator/(const Vec2& a, const T& s) { return {a.x / s, a.y / s}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
};

using Point2q = Vec2<Rational>;
using Point2d = Vec2<double>;
// Directions share the point representation; "nonzero" is a precondition.
using Dir2q = Vec2<Rational>;
using Dir2d = Vec2<double>;

template <class T>
T dot(const Vec2<T>& a, const Vec2<T>& b) {
  return a.x * b.x + a.y * b.y;
}

template <class T>
T cross(const Vec2<T>& a, const Vec2<T>& b) {
  return a.x * b.y - a.y * b.x;
}

template <class T>
T norm_sq(const Vec2<T>& a) {
  return dot(a, a);
}

inline double norm(const Point2d& a) { return std::hypot(a.x, a.y); }
inline Point2d normalized(const Point2d& a) { return a / norm(a); }

template <class T>
bool is_zero(const Vec2<T>& a) {
  return a.x == 0 && a.y == 0;
}

inline Point2d to_double(const Point2q& p) { return {p.x.get_d(), p.y.get_d()}; }
inline Point2d to_double(const Point2d& p) { return p; }

/// Rotation by a quarter turn: (u1, u2) -> (-u2, u1).
template <class T>
Vec2<T> iota(const Vec2<T>& d) {
  return {-d.y, d.x};
}

template <class T>
struct Line2 {
  Vec2<T> base;
  Vec2<T> dir;

  static Line2 through(const Vec2<T>& base, const Vec2<T>& dir) {
    if (is_zero(dir)) throw Error(ErrorKind::InvalidScene, "line direction is zero");
    return Line2{base, dir};
  }
  Vec2<T> at(const T& lambda) const { return base + lambda * dir; }
};

using Line2q = Line2<Rational>;
using Line2d = Line2<double>;

/// Point-set equality, independent of direction scale and base shift.
inline bool same_line(const Line2q& a, const Line2q& b) {
  return cross(a.dir, b.dir) == 0 && cross(a.dir, b.base - a.base) == 0;
}

/// Float point-set equality: unit directions parallel within `tol` and
/// b.base at distance < tol * max(1, |b.base|) from a.
bool same_line(const Line2d& a, const Line2d& b, double tol);

double distance_to_line(const Line2d& line, const Point2d& p);

/// Circles carry the squared radius so that scaling stays exact.
template <class T>
struct Circle2 {
  Vec2<T> center;
  T radius_sq;

  static Circle2 with_radius(const Vec2<T>& center, const T& radius) {
    if (!(radius > 0)) throw Error(ErrorKind::InvalidScene, "circle radius must be positive");
    return Circle2{center, radius * radius};
  }
  static Circle2 with_radius_sq(const Vec2<T>& center, const T& radius_sq) {
    if (!(radius_sq > 0)) throw Error(ErrorKind::InvalidScene, "circle radius must be positive");
    return Circle2{center, radius_sq};
  }

  T radius() const {
    if constexpr (std::is_same_v<T, double>)
      return std::sqrt(radius_sq);
    else
      return require_sqrt(radius_sq, "circle radius");
  }
};

using Circle2q = Circle2<Rational>;
using Circle2d = Circle2<double>;

template <class T>
struct FiniteRadiant {
  Vec2<T> point;
};

template <class T>
struct RadiantAtInfinity {
  Vec2<T> dir;
};

template <class T>
using Radiant = std::variant<FiniteRadiant<T>, RadiantAtInfinity<T>>;

template <class T>
using Mirror = std::variant<Circle2<T>, Line2<T>>;

template <class T>
struct Scene {
  Radiant<T> radiant;
  Mirror<T> mirror;
  T n;

  /// Validating constructor: n != 0, nonzero directions, radiant off the mirror
  /// (exact for Rational, distance >= 1e-12 for double).
  static Scene make(Radiant<T> radiant, Mirror<T> mirror, T n);

  bool finite_radiant() const { return std::holds_alternative<FiniteRadiant<T>>(radiant); }
  bool circle_mirror() const { return std::holds_alternative<Circle2<T>>(mirror); }
  const Vec2<T>& radiant_point() const;
  const Circle2<T>& circle() const;
  const Line2<T>& line() const;
  Scene with_n(const T& other_n) const { return Scene{radiant, mirror, other_n}; }
};

using Sceneq = Scene<Rational>;
using Scened = Scene<double>;

Scened to_double(const Sceneq& scene);

/// Gradient of the mirror's defining equation at X (up to positive scale):
/// X - O for a circle, iota(dir) for a line.
template <class T>
Vec2<T> mirror_normal(const Mirror<T>& mirror, const Vec2<T>& x) {
  if (auto* c = std::get_if<Circle2<T>>(&mirror)) return x - c->center;
  return iota(std::get<Line2<T>>(mirror).dir);
}

/// Homogeneous quadratic a*l1^2 + b*l1*l2 + c*l2^2.
template <class T>
struct QuadForm {
  T a, b, c;
  T operator()(const Vec2<T>& l) const { return a * l.x * l.x + b * l.x * l.y + c * l.y * l.y; }
  bool is_zero() const { return a == 0 && b == 0 && c == 0; }
};

/// Incoming ray vector at X: A - X for a finite radiant, the fixed direction
/// otherwise. Throws RadiantOnMirror when X coincides with A.
template <class T>
Vec2<T> incoming(const Scene<T>& scene, const Vec2<T>& x) {
  if (auto* f = std::get_if<FiniteRadiant<T>>(&scene.radiant)) {
    Vec2<T> a = f->point - x;
    if (is_zero(a)) throw Error(ErrorKind::RadiantOnMirror, "X coincides with the radiant point");
    return a;
  }
  return std::get<RadiantAtInfinity<T>>(scene.radiant).dir;
}

/// Cleared-denominator Snell relation in the refracted direction l:
///   ((A-X).w)^2 |l|^2 - n^2 |A-X|^2 (l.w)^2,   w = iota(normal).
/// Its two projective roots are the refracted directions for n and -n.
template <class T>
QuadForm<T> refraction_conic(const Scene<T>& scene, const Vec2<T>& x, const Vec2<T>& normal) {
  Vec2<T> a = incoming(scene, x);
  Vec2<T> w = iota(normal);
  T c = dot(a, w);
  T c2 = c * c;
  T m = scene.n * scene.n * norm_sq(a);
  QuadForm<T> q{c2 - m * w.x * w.x, -2 * m * w.x * w.y, c2 - m * w.y * w.y};
  if (q.is_zero()) throw Error(ErrorKind::DegenerateConic, "refraction conic vanishes identically");
  return q;
}

/// The refracted line R_n(X). Throws TotalInternalReflection when
/// |sin(in) / n| > 1 and RadiantOnMirror when X is the radiant point.
Line2d refract(const Scened& scene, const Point2d& x);

/// Same as refract but reports total internal reflection as nullopt.
std::optional<Line2d> try_refract(const Scened& scene, const Point2d& x);

/// B = A + (1 - r^2/|A-O|^2)(O - A), the point with |A-O||B-O| = r^2 on ray AO.
template <class T>
Vec2<T> inverse_point(const Vec2<T>& a, const Circle2<T>& circle) {
  Vec2<T> oa = circle.center - a;
  T d2 = norm_sq(oa);
  bool degenerate;
  if constexpr (std::is_same_v<T, double>)
    degenerate = d2 < 1e-24 || std::abs(d2 - circle.radius_sq) <= 1e-12 * std::max(1.0, d2);
  else
    degenerate = d2 == 0 || d2 == circle.radius_sq;
  if (degenerate)
    throw Error(ErrorKind::AOnCircleOrCenter, "inverse point needs A off the circle and away from O");
  T factor = T(1) - circle.radius_sq / d2;
  return a + factor * oa;
}

/// The circle through A and R tangent to the line RO at R.
template <class T>
Circle2<T> tangent_circle_through(const Vec2<T>& a, const Vec2<T>& r, const Vec2<T>& o) {
  Vec2<T> w = iota(r - o);
  T denom = 2 * dot(w, r - a);
  bool degenerate;
  if constexpr (std::is_same_v<T, double>)
    degenerate = std::abs(denom) <= 1e-14 * std::max(1.0, norm_sq(w) + norm_sq(r - a));
  else
    degenerate = denom == 0;
  if (degenerate) throw Error(ErrorKind::RNotOffAxis, "R lies on the line through A and O");
  T lambda = -norm_sq(r - a) / denom;
  return Circle2<T>{r + lambda * w, lambda * lambda * norm_sq(w)};
}

struct AxisIntersection {
  bool has_ray = false;  // false: no refracted ray exists at this angle
  double x = 0.0;
};

/// Crossing of the refracted ray with the x-axis for the normalized scene
/// A = (0,0), O = (1,0), X = O + r(cos theta, sin theta):
///   x = sgn(n) r / (sgn(n) cos theta + sigma sqrt(n^2(1+r^2+2r cos theta) - sin^2 theta)) + 1
/// with sigma = sgn(-r - cos theta). Throws DenominatorZero for tangential
/// rays and for rays lying on the axis.
AxisIntersection axis_intersection(double r, double n, double theta);

/// The refracted line in the normalized frame from the rotation T_theta.
std::optional<Line2d> axis_frame_refracted_line(double r, double n, double theta);

/// Branch predicates for the normalized scene: x_int in (0, 1), and x_int
/// on the focal segment from A to B = (1 - r^2, 0).
inline bool in_unit_interval(double x_int) { return x_int > 0.0 && x_int < 1.0; }
inline bool in_focal_segment(double x_int, double r) { return x_int > 0.0 && x_int < 1.0 - r * r; }

/// Orientation-preserving similarity p -> M (p - origin), M = [[a, b], [-b, a]].
template <class T>
struct Similarity {
  Vec2<T> origin;
  T a, b;

  Vec2<T> apply_dir(const Vec2<T>& d) const { return {a * d.x + b * d.y, -b * d.x + a * d.y}; }
  Vec2<T> apply(const Vec2<T>& p) const { return apply_dir(p - origin); }
  /// Squared scale factor.
  T scale_sq() const { return a * a + b * b; }
  Vec2<T> invert_dir(const Vec2<T>& d) const {
    T s = scale_sq();
    return {(a * d.x - b * d.y) / s, (b * d.x + a * d.y) / s};
  }
  Vec2<T> invert(const Vec2<T>& p) const { return origin + invert_dir(p); }
  bool is_identity() const { return is_zero(origin) && a == 1 && b == 0; }
};

template <class T>
struct NormalizedScene {
  Scene<T> scene;
  Similarity<T> transform;  // original -> normalized
};

/// Maps A -> (0,0) and O -> (1,0). Exact in the rational tower because the
/// circle stores r^2. Throws AEqualsO, or InvalidScene for non-circle scenes.
template <class T>
NormalizedScene<T> normalize_scene(const Scene<T>& scene);

/// Inverse of normalize_scene's transform applied to a whole scene.
template <class T>
Scene<T> transform_scene(const Scene<T>& scene, const Similarity<T>& sim);

template <class T>
Scene<T> invert_transform_scene(const Scene<T>& scene, const Similarity<T>& sim);

}  // namespace caustica
