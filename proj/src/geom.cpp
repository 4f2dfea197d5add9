#include "caustica/geom.hpp"

#include <algorithm>
#include <cmath>

namespace caustica {

bool same_line(const Line2d& a, const Line2d& b, double tol) {
  Point2d ua = normalized(a.dir);
  Point2d ub = normalized(b.dir);
  if (std::abs(cross(ua, ub)) > tol) return false;
  double scale = std::max({1.0, norm(a.base), norm(b.base)});
  return std::abs(cross(ua, b.base - a.base)) <= tol * scale;
}

double distance_to_line(const Line2d& line, const Point2d& p) {
  return std::abs(cross(normalized(line.dir), p - line.base));
}

namespace {

template <class T>
bool radiant_on_mirror(const Vec2<T>& a, const Mirror<T>& mirror) {
  if (auto* c = std::get_if<Circle2<T>>(&mirror)) {
    T d2 = norm_sq(a - c->center);
    if constexpr (std::is_same_v<T, double>) {
      return std::abs(std::sqrt(d2) - std::sqrt(c->radius_sq)) < 1e-12;
    } else {
      return d2 == c->radius_sq;
    }
  }
  const auto& l = std::get<Line2<T>>(mirror);
  T c = cross(l.dir, a - l.base);
  if constexpr (std::is_same_v<T, double>) {
    return std::abs(c) / norm(l.dir) < 1e-12;
  } else {
    return c == 0;
  }
}

}  // namespace

template <class T>
Scene<T> Scene<T>::make(Radiant<T> radiant, Mirror<T> mirror, T n) {
  if (n == 0) throw Error(ErrorKind::InvalidScene, "refraction constant must be nonzero");
  if (auto* c = std::get_if<Circle2<T>>(&mirror)) {
    if (!(c->radius_sq > 0)) throw Error(ErrorKind::InvalidScene, "circle radius must be positive");
  } else if (is_zero(std::get<Line2<T>>(mirror).dir)) {
    throw Error(ErrorKind::InvalidScene, "line direction is zero");
  }
  if (auto* f = std::get_if<FiniteRadiant<T>>(&radiant)) {
    if (radiant_on_mirror(f->point, mirror))
      throw Error(ErrorKind::RadiantOnMirror, "radiant point lies on the mirror");
  } else if (is_zero(std::get<RadiantAtInfinity<T>>(radiant).dir)) {
    throw Error(ErrorKind::InvalidScene, "direction of the radiant at infinity is zero");
  }
  return Scene{std::move(radiant), std::move(mirror), std::move(n)};
}

template <class T>
const Vec2<T>& Scene<T>::radiant_point() const {
  if (auto* f = std::get_if<FiniteRadiant<T>>(&radiant)) return f->point;
  throw Error(ErrorKind::InvalidScene, "radiant point is at infinity");
}

template <class T>
const Circle2<T>& Scene<T>::circle() const {
  if (auto* c = std::get_if<Circle2<T>>(&mirror)) return *c;
  throw Error(ErrorKind::UnsupportedMirror, "scene mirror is a line, a circle is required");
}

template <class T>
const Line2<T>& Scene<T>::line() const {
  if (auto* l = std::get_if<Line2<T>>(&mirror)) return *l;
  throw Error(ErrorKind::UnsupportedMirror, "scene mirror is a circle, a line is required");
}

template struct Scene<Rational>;
template struct Scene<double>;

Scened to_double(const Sceneq& scene) {
  Radiant<double> radiant = std::visit(
      [](const auto& r) -> Radiant<double> {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, FiniteRadiant<Rational>>)
          return FiniteRadiant<double>{to_double(r.point)};
        else
          return RadiantAtInfinity<double>{to_double(r.dir)};
      },
      scene.radiant);
  Mirror<double> mirror = std::visit(
      [](const auto& m) -> Mirror<double> {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Circle2q>)
          return Circle2d{to_double(m.center), m.radius_sq.get_d()};
        else
          return Line2d{to_double(m.base), to_double(m.dir)};
      },
      scene.mirror);
  return Scened{radiant, mirror, scene.n.get_d()};
}

std::optional<Line2d> try_refract(const Scened& scene, const Point2d& x) {
  Point2d a = incoming(scene, x);
  double alen = norm(a);
  if (alen < 1e-300) throw Error(ErrorKind::RadiantOnMirror, "X coincides with the radiant point");
  Point2d nu = normalized(mirror_normal(scene.mirror, x));
  Point2d ahat = a / alen;
  // Orient the incoming line into the half-plane of nu; lines are unoriented.
  if (dot(ahat, nu) < 0) ahat = -ahat;
  double sin_in = dot(iota(nu), ahat);
  double sin_out = sin_in / scene.n;
  if (std::abs(sin_out) > 1.0) {
    if (std::abs(sin_out) > 1.0 + 1e-14) return std::nullopt;
    sin_out = std::copysign(1.0, sin_out);
  }
  double cos_out = std::sqrt(std::max(0.0, 1.0 - sin_out * sin_out));
  return Line2d{x, cos_out * nu + sin_out * iota(nu)};
}

Line2d refract(const Scened& scene, const Point2d& x) {
  if (auto line = try_refract(scene, x)) return *line;
  throw Error(ErrorKind::TotalInternalReflection, "|sin(in)/n| > 1, no refracted ray");
}

namespace {

double sgn0(double v) { return (v > 0) - (v < 0); }

}  // namespace

AxisIntersection axis_intersection(double r, double n, double theta) {
  double c = std::cos(theta);
  double s = std::sin(theta);
  double radicand = n * n * (1 + r * r + 2 * r * c) - s * s;
  if (radicand < 0) return {};
  if (std::abs(s) < 1e-12)
    throw Error(ErrorKind::DenominatorZero, "refracted ray lies on the axis");
  double sigma = sgn0(-r - c);
  double denom = sgn0(n) * c + sigma * std::sqrt(radicand);
  if (std::abs(denom) < 1e-14)
    throw Error(ErrorKind::DenominatorZero, "refracted ray is parallel to the axis");
  return {true, sgn0(n) * r / denom + 1.0};
}

std::optional<Line2d> axis_frame_refracted_line(double r, double n, double theta) {
  double c = std::cos(theta);
  double s = std::sin(theta);
  double radicand = n * n * (1 + r * r + 2 * r * c) - s * s;
  if (radicand < 0) return std::nullopt;
  double sigma = sgn0(-r - c);
  double diag = sigma * std::sqrt(radicand);
  double off = sgn0(n) * s;
  Point2d dir{diag * c - off * s, off * c + diag * s};
  if (norm(dir) == 0) return std::nullopt;
  return Line2d{{1 + r * c, r * s}, dir};
}

template <class T>
Scene<T> transform_scene(const Scene<T>& scene, const Similarity<T>& sim) {
  Radiant<T> radiant = std::visit(
      [&](const auto& r) -> Radiant<T> {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, FiniteRadiant<T>>)
          return FiniteRadiant<T>{sim.apply(r.point)};
        else
          return RadiantAtInfinity<T>{sim.apply_dir(r.dir)};
      },
      scene.radiant);
  Mirror<T> mirror = std::visit(
      [&](const auto& m) -> Mirror<T> {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Circle2<T>>)
          return Circle2<T>{sim.apply(m.center), m.radius_sq * sim.scale_sq()};
        else
          return Line2<T>{sim.apply(m.base), sim.apply_dir(m.dir)};
      },
      scene.mirror);
  return Scene<T>{radiant, mirror, scene.n};
}

template <class T>
Scene<T> invert_transform_scene(const Scene<T>& scene, const Similarity<T>& sim) {
  T s = sim.scale_sq();
  // The inverse of p -> M(p - c) is p -> (M^T / s)(p) + c, itself a similarity.
  Similarity<T> inv{Vec2<T>{}, sim.a / s, -sim.b / s};
  Scene<T> back = transform_scene(scene, inv);
  Similarity<T> shift{-sim.origin, T(1), T(0)};
  return transform_scene(back, shift);
}

template <class T>
NormalizedScene<T> normalize_scene(const Scene<T>& scene) {
  if (!scene.finite_radiant())
    throw Error(ErrorKind::InvalidScene, "normalization needs a finite radiant point");
  const Vec2<T>& a = scene.radiant_point();
  const Circle2<T>& circle = scene.circle();
  Vec2<T> w = circle.center - a;
  T w2 = norm_sq(w);
  if (w2 == 0) throw Error(ErrorKind::AEqualsO, "radiant point coincides with the circle center");
  Similarity<T> sim{a, w.x / w2, w.y / w2};
  return {transform_scene(scene, sim), sim};
}

template Scene<Rational> transform_scene(const Scene<Rational>&, const Similarity<Rational>&);
template Scene<double> transform_scene(const Scene<double>&, const Similarity<double>&);
template Scene<Rational> invert_transform_scene(const Scene<Rational>&, const Similarity<Rational>&);
template Scene<double> invert_transform_scene(const Scene<double>&, const Similarity<double>&);
template NormalizedScene<Rational> normalize_scene(const Scene<Rational>&);
template NormalizedScene<double> normalize_scene(const Scene<double>&);

}  // namespace caustica
