#pragma once

// Complete caustics by refraction of a circle, computed two ways:
//   1. the envelope of the refracted-ray family F_{r,n}(x, y, t), obtained as
//      Res_t(F, dF/dt) with the known spurious factors divided out;
//   2. the evolute (locus of curvature centers) of the Cartesian oval.
// Both routes work in the normalized frame A = (0,0), O = (1,0).

#include <optional>
#include <string>
#include <vector>

#include "caustica/geom.hpp"
#include "caustica/oval.hpp"
#include "caustica/poly.hpp"

namespace caustica {

// ---------------------------------------------------------------------------
// Envelope route.

/// Refraction family for the circle O = (1,0), radius r, radiant A = (0,0),
/// with R(t) = O + r (2t, t^2 - 1) / (1 + t^2). r and n are constants or the
/// variables "r", "n" (the symbolic mode). Variables: x, y, t [, r, n].
/// Powers of (1 + t^2) and the rational content are removed.
MPoly build_family(const MPoly& r, const MPoly& n);
MPoly build_family(const Rational& r, const Rational& n);

struct StrippedFactor {
  std::string name;
  MPoly factor;
  int multiplicity = 0;  // 0: did not divide, or specialized to a constant
  bool extension = false;  // candidate beyond the published factor list
};

struct CausticResult {
  MPoly raw;                               // primitive Res_t(F, dF/dt)
  std::vector<StrippedFactor> stripped;
  MPoly caustic_poly;                      // primitive remainder
  Rational content;                        // raw = content * caustic_poly * prod factor^mult
  std::optional<std::pair<Rational, Rational>> specialized_at;
};

/// Raw stage: primitive(Res_v(F, dF/dv)); `stripped` empty, caustic_poly = raw.
CausticResult envelope_resultant(const MPoly& f, std::string_view var = "t");

/// The spurious factors of the raw resultant, specialized at (r, n) when
/// given, otherwise in the variables r, n:
///   n^4, (r-1)^2, (r+1)^2, y^2, ((x-1)^2 + y^2 - r^2)^2,
///   (x-1)^2 (r^2 n^2 + n^2 - 1) - (y - r)^2,
/// plus the pair of tangent lines from A, r^2 x^2 - (1 - r^2) y^2, which is a
/// component of the raw resultant for |n| = 1 only (marked `extension`).
/// The squares are listed by their base; multiplicities are found by division.
std::vector<StrippedFactor> spurious_factors(const std::optional<std::pair<Rational, Rational>>& rn);

/// Divides each spurious factor out to maximal multiplicity.
CausticResult strip_spurious(CausticResult raw_stage,
                             const std::optional<std::pair<Rational, Rational>>& rn = std::nullopt);

/// raw == content * caustic_poly * prod factor^mult, exactly.
bool reconstructs(const CausticResult& result);

// ---------------------------------------------------------------------------
// Evolute route.

struct EdSystem {
  MPoly g;  // G(x0, y0)
  MPoly h;  // (x0 - x) dG/dy0 - (y0 - y) dG/dx0
  MPoly j;  // det d(G, H)/d(x0, y0)
};

/// The ED-discriminant system of G, whose variables are renamed to x0, y0.
EdSystem ed_system(const MPoly& g, std::string_view gx = "x", std::string_view gy = "y");

enum class EvoluteEngine {
  // Exact implicitization of the curvature-center map (default).
  Implicitization,
  // eliminate_two on the ED system; may carry extraneous factors.
  IteratedResultants,
};

struct EvoluteOptions {
  EvoluteEngine engine = EvoluteEngine::Implicitization;
  std::string gx = "x";
  std::string gy = "y";
  // Optional numeric referee: curvature centers that must satisfy the result
  // with scaled residual below `referee_tol`.
  std::vector<Point2d> referee;
  double referee_tol = 1e-6;
  int max_degree = 0;  // 0: the evolute bound 3e(e-1) for deg G = e
};

/// Evolute of the curve G = 0, primitive, in variables (x, y).
/// Throws ZeroResultant when the evolute is not a curve (e.g. G a circle),
/// EliminationCollapse when the referee rejects the result.
MPoly evolute_eliminate(const MPoly& g, const EvoluteOptions& options = {});

/// Curvature center of the curve P = 0 at a point M on it, from the gradient
/// and Hessian of P; nullopt at inflections (zero curvature).
std::optional<Point2d> curvature_center(const MPoly& p, const Point2d& m, std::string_view gx = "x",
                                        std::string_view gy = "y");

/// Curvature centers at `count` branch samples of the oval (see
/// sample_branch); computed from the metric defining function, so the circle
/// case s = 0 is included.
std::vector<Point2d> curvature_centers(const OvalD& oval, int count);

// ---------------------------------------------------------------------------
// Numeric envelope.

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Refracted rays R_n(X(theta)): X = O + r(cos, sin) for a circle, and
/// X = base + tan((theta - pi)/2) dir for a line, theta in [0, 2 pi).
class RayFamily {
 public:
  explicit RayFamily(Scened scene, int scan = 4096);

  const Scened& scene() const { return scene_; }
  Point2d mirror_point(double theta) const;
  std::optional<Line2d> ray(double theta) const;
  /// Maximal theta-intervals on which a refracted ray exists.
  const std::vector<Interval>& validity() const { return validity_; }

 private:
  Scened scene_;
  std::vector<Interval> validity_;
};

struct EnvelopeOptions {
  int count = 1024;            // samples per validity interval
  double max_condition = 1e8;  // adjacent-ray intersections above are dropped
};

/// Intersections of adjacent rays theta_i, theta_i + delta (delta = interval
/// width / count), in increasing theta order. The serial and OpenMP versions
/// return identical point lists.
std::vector<Point2d> numeric_envelope(const RayFamily& family, const EnvelopeOptions& options = {});
std::vector<Point2d> numeric_envelope_serial(const RayFamily& family, const EnvelopeOptions& options = {});

/// |E(p)| / (||E||_1 * max(1, |p|)^deg E).
double scaled_residual(const MPoly& e, const Point2d& p);

// ---------------------------------------------------------------------------
// Cross verification.

class PipelineMismatchError : public Error {
 public:
  PipelineMismatchError(MPoly envelope, MPoly evolute)
      : Error(ErrorKind::PipelineMismatch, "envelope and evolute polynomials differ"),
        envelope_(std::move(envelope)),
        evolute_(std::move(evolute)) {}
  const MPoly& envelope() const { return envelope_; }
  const MPoly& evolute() const { return evolute_; }

 private:
  MPoly envelope_;
  MPoly evolute_;
};

struct CrossVerifyOptions {
  int envelope_count = 1024;
  double residual_tol = 1e-5;
};

struct CrossVerifyReport {
  Rational r;  // normalized radius
  Rational n;
  CausticResult envelope;
  MPoly evolute;
  MPoly oval_quartic;
  int degree = 0;
  std::size_t terms = 0;
  std::size_t numeric_points = 0;
  double max_residual = 0.0;
  std::size_t residual_failures = 0;
  int pencils_skipped = 0;  // |n| = 1: the undeviated family through A is not checked
  double seconds_envelope = 0.0;
  double seconds_evolute = 0.0;
  double seconds_numeric = 0.0;
  bool pass() const { return residual_failures == 0; }
};

/// Runs both symbolic routes on the normalized scene, requires exact agreement
/// (throws PipelineMismatchError otherwise) and checks numeric envelope points
/// of the +n and -n families against the shared polynomial.
CrossVerifyReport cross_verify(const Sceneq& scene, const CrossVerifyOptions& options = {});

/// Normalized radius r = r' / |A - O| of a circle scene; IrrationalResult when
/// it is not rational.
Rational normalized_radius(const Sceneq& scene);

}  // namespace caustica
