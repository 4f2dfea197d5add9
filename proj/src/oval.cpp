#include "caustica/oval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace caustica {

double OvalD::residual(const Point2d& m) const {
  return branch * norm(a - m) + s * norm(b - m) - t;
}

Point2d OvalD::gradient(const Point2d& m) const {
  Point2d g = (branch / norm(m - a)) * (m - a);
  double db = norm(m - b);
  if (s != 0.0) g = g + (s / db) * (m - b);
  return g;
}

OvalD to_double(const CartesianOval& oval) {
  return {to_double(oval.a), to_double(oval.b), std::sqrt(oval.s_sq.get_d()), std::sqrt(oval.t_sq.get_d()),
          oval.branch};
}

MPoly quartic_closure(const CartesianOval& oval) {
  MPoly x = MPoly::variable("x").with_vars({"x", "y"});
  MPoly y = MPoly::variable("y").with_vars({"x", "y"});
  auto dist_sq = [&](const Point2q& p) { return pow(x - p.x, 2) + pow(y - p.y, 2); };
  MPoly da = dist_sq(oval.a);
  MPoly db = dist_sq(oval.b);
  MPoly inner = da - oval.s_sq * db + oval.t_sq;
  MPoly q = inner * inner - (4 * oval.t_sq) * da;
  if (q.is_zero()) throw Error(ErrorKind::DegenerateConic, "oval closure vanishes identically");
  return primitive(q);
}

std::array<CartesianOval, 2> from_circle_scene(const Sceneq& scene) {
  const Point2q& a = scene.radiant_point();
  const Circle2q& c = scene.circle();
  Point2q b = inverse_point(a, c);
  Rational ao = norm_sq(a - c.center);
  Rational s_sq = ao / c.radius_sq;
  Rational t_sq = ao * norm_sq(a - b) / (c.radius_sq * scene.n * scene.n);
  return {CartesianOval{a, b, s_sq, t_sq, 1}, CartesianOval{a, b, s_sq, t_sq, -1}};
}

CartesianOval from_line_scene(const Sceneq& scene) {
  const Point2q& a = scene.radiant_point();
  const Line2q& l = scene.line();
  Point2q nu = iota(l.dir);
  Rational off = dot(a - l.base, nu);
  if (off == 0) throw Error(ErrorKind::AOnLine, "radiant point lies on the line");
  Rational n_sq = scene.n * scene.n;
  if (n_sq == 1) throw Error(ErrorKind::AbsNEqualsOne, "|n| = 1 gives a degenerate oval");
  Point2q b = a - (2 * off / norm_sq(nu)) * nu;
  return CartesianOval{a, b, Rational(1), norm_sq(a - b) / n_sq, n_sq < 1 ? 1 : -1};
}

Line2d normal_line(const OvalD& oval, const Point2d& m, double tol) {
  if (norm(m - oval.a) < 1e-12 || (oval.s != 0.0 && norm(m - oval.b) < 1e-12))
    throw Error(ErrorKind::MAtFocus, "M coincides with a focus");
  if (std::abs(oval.residual(m)) > tol * std::max(1.0, oval.t))
    throw Error(ErrorKind::MNotOnOval, "M is not on the oval branch");
  Point2d g = oval.gradient(m);
  if (norm(g) < 1e-300) throw Error(ErrorKind::MNotOnOval, "oval is singular at M");
  return Line2d{m, g};
}

Sceneq invert_to_scene(const CartesianOval& oval) {
  if (oval.s_sq <= 0) throw Error(ErrorKind::NoConsistentScene, "s must be positive");
  if (oval.s_sq == 1) throw Error(ErrorKind::NoConsistentScene, "s = 1 is the line case");
  if (oval.a == oval.b) throw Error(ErrorKind::NoConsistentScene, "foci coincide");
  if (oval.t_sq <= 0) throw Error(ErrorKind::NoConsistentScene, "t must be positive");
  Rational k = oval.s_sq - 1;
  Rational ab = norm_sq(oval.b - oval.a);
  Point2q o = oval.a + (oval.s_sq / k) * (oval.b - oval.a);
  Rational r_sq = oval.s_sq * ab / (k * k);
  Rational n = require_sqrt(oval.s_sq * ab / oval.t_sq, "refraction constant");
  return Sceneq::make(FiniteRadiant<Rational>{oval.a}, Circle2q{o, r_sq}, n);
}

std::vector<Point2d> sample_branch(const OvalD& oval, int count) {
  std::vector<Point2d> out;
  if (count < 1) return out;
  const Point2d c = 0.5 * (oval.a + oval.b);
  const double h = norm(oval.b - oval.a);
  const double rho_max = 1e3 * (h + oval.t + 1.0);
  constexpr int kGrid = 4096;
  for (int k = 0; k < count; ++k) {
    double phi = 2.0 * std::numbers::pi * (k + 0.5) / count;
    Point2d u{std::cos(phi), std::sin(phi)};
    auto f = [&](double rho) { return oval.residual(c + rho * u); };
    double prev_rho = 0.0;
    double prev = f(0.0);
    for (int i = 1; i <= kGrid; ++i) {
      double q = static_cast<double>(i) / kGrid;
      double rho = rho_max * q * q * q;
      double val = f(rho);
      if ((prev < 0) != (val < 0) || val == 0.0) {
        double lo = prev_rho, hi = rho, flo = prev;
        for (int it = 0; it < 200; ++it) {
          double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          double fm = f(mid);
          if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        Point2d m = c + (0.5 * (lo + hi)) * u;
        if (std::abs(oval.residual(m)) < 1e-10 * std::max(1.0, norm(m))) out.push_back(m);
      }
      prev_rho = rho;
      prev = val;
    }
  }
  return out;
}

double normal_sine_ratio(const OvalD& oval, const Point2d& m, const Point2d& d) {
  Point2d w = iota(normalized(d));
  double sin_a = std::abs(dot(oval.a - m, w)) / norm(oval.a - m);
  double sin_b = std::abs(dot(oval.b - m, w)) / norm(oval.b - m);
  return sin_a / sin_b;
}

std::optional<double> matching_refraction(const Scened& scene, const Line2d& line, double tol) {
  const Circle2d& circle = scene.circle();
  Point2d d = normalized(line.dir);
  Point2d p = line.base - circle.center;
  double half_b = dot(d, p);
  double disc = half_b * half_b - (norm_sq(p) - circle.radius_sq);
  if (disc < 0) return std::nullopt;
  double root = std::sqrt(disc);
  for (double lambda : {-half_b - root, -half_b + root}) {
    Point2d r = line.base + lambda * d;
    for (double n : {std::abs(scene.n), -std::abs(scene.n)}) {
      auto ray = try_refract(scene.with_n(n), r);
      if (ray && same_line(*ray, line, tol)) return n;
    }
  }
  return std::nullopt;
}

}  // namespace caustica
