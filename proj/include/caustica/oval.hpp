#pragma once

// Cartesian ovals  branch * |A - M| + s |B - M| = t.
//
// The exact data keeps s^2 and t^2: the scene constructions produce them as
// rationals even when s and t themselves are irrational.

#include <array>
#include <optional>
#include <vector>

#include "caustica/geom.hpp"
#include "caustica/poly.hpp"

namespace caustica {

struct CartesianOval {
  Point2q a;
  Point2q b;
  Rational s_sq;
  Rational t_sq;
  int branch = 1;  // sign in front of |A - M|
};

/// Float view used for sampling and normals; s, t >= 0.
struct OvalD {
  Point2d a;
  Point2d b;
  double s = 0.0;
  double t = 0.0;
  int branch = 1;

  /// Signed defining function branch*|A-M| + s|B-M| - t.
  double residual(const Point2d& m) const;
  /// Gradient of `residual`; undefined at the foci.
  Point2d gradient(const Point2d& m) const;
};

OvalD to_double(const CartesianOval& oval);

/// (|A-M|^2 - s^2 |B-M|^2 + t^2)^2 - 4 t^2 |A-M|^2 in (x, y), primitive.
MPoly quartic_closure(const CartesianOval& oval);

/// Both ovals of a circle scene: foci A and B = inverse_point(A),
/// s^2 = |A-O|^2 / r^2, t^2 = |A-O|^2 |A-B|^2 / (r^2 n^2); branches +1 and -1.
std::array<CartesianOval, 2> from_circle_scene(const Sceneq& scene);

/// The oval of a line scene: B the reflection of A in L, s = 1,
/// t = |A-B| / |n|, branch + for |n| < 1 and - for |n| > 1.
/// Throws AbsNEqualsOne, AOnLine.
CartesianOval from_line_scene(const Sceneq& scene);

/// Line through M along the gradient. Throws MAtFocus when M is within 1e-12
/// of a focus and MNotOnOval when |residual| > tol * max(1, t).
Line2d normal_line(const OvalD& oval, const Point2d& m, double tol = 1e-9);

/// Circle scene (A, O, r, n > 0) with from_circle_scene(result) reproducing
/// the oval's |A-B|, s and t. O lies on the line AB. Throws NoConsistentScene
/// for s <= 0, s = 1 or A = B, and IrrationalResult when n is irrational.
Sceneq invert_to_scene(const CartesianOval& oval);

/// Points of the branch found by radial root isolation from the midpoint of
/// the foci along `count` equally spaced directions. Every returned point has
/// |residual| < 1e-10 * max(1, |M|). Empty when the branch has no real points.
std::vector<Point2d> sample_branch(const OvalD& oval, int count);

/// sin(alpha) / sin(beta) of Lemma 1.1 for the line through M with direction d:
/// alpha, beta are the angles between d and A - M, B - M.
double normal_sine_ratio(const OvalD& oval, const Point2d& m, const Point2d& d);

/// A refracted ray of `scene` (circle mirror) equal to `line` as a point set,
/// searched over both intersections of `line` with the circle and both signs
/// of n. Returns the n used, or nullopt.
std::optional<double> matching_refraction(const Scened& scene, const Line2d& line, double tol);

}  // namespace caustica
