#include "caustica/caustic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "caustica/parallel.hpp"

namespace caustica {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

MPoly build_family(const MPoly& r, const MPoly& n) {
  const MPoly::VarList xyt{"x", "y", "t"};
  MPoly x = MPoly::variable("x").with_vars(xyt);
  MPoly y = MPoly::variable("y").with_vars(xyt);
  MPoly t = MPoly::variable("t").with_vars(xyt);
  MPoly one = MPoly::constant(1, xyt);
  MPoly d = one + t * t;
  // D * R(t) and the (unnormalized) normal R - O with its quarter turn.
  MPoly rx = d + 2 * r * t;
  MPoly ry = r * (t * t - one);
  MPoly wx = one - t * t;
  MPoly wy = 2 * t;
  // A - R and Y - R, both scaled by D.
  MPoly ax = -rx, ay = -ry;
  MPoly yx = d * x - rx, yy = d * y - ry;
  MPoly a_w = ax * wx + ay * wy;
  MPoly y_w = yx * wx + yy * wy;
  MPoly f = (yx * yx + yy * yy) * a_w * a_w - n * n * (ax * ax + ay * ay) * y_w * y_w;
  if (f.is_zero()) throw Error(ErrorKind::DegenerateConic, "refraction family vanishes identically");
  while (auto q = exact_div(f, d)) f = std::move(*q);
  return primitive(f);
}

MPoly build_family(const Rational& r, const Rational& n) {
  return build_family(MPoly::constant(r), MPoly::constant(n));
}

CausticResult envelope_resultant(const MPoly& f, std::string_view var) {
  if (f.degree_in(var) < 2) throw Error(ErrorKind::BothConstantInV, "family must have degree >= 2 in the parameter");
  MPoly res = sylvester_resultant(f, derivative(f, var), var);
  if (res.is_zero()) throw Error(ErrorKind::ZeroResultant, "envelope resultant vanishes identically");
  CausticResult out;
  out.raw = primitive(res);
  out.caustic_poly = out.raw;
  out.content = 1;
  return out;
}

std::vector<StrippedFactor> spurious_factors(const std::optional<std::pair<Rational, Rational>>& rn) {
  const MPoly::VarList xy{"x", "y"};
  MPoly x = MPoly::variable("x").with_vars(xy);
  MPoly y = MPoly::variable("y").with_vars(xy);
  MPoly r = rn ? MPoly::constant(rn->first, xy) : MPoly::variable("r");
  MPoly n = rn ? MPoly::constant(rn->second, xy) : MPoly::variable("n");
  MPoly xm = x - Rational(1);
  std::vector<StrippedFactor> out;
  out.push_back({"n", n, 0, false});
  out.push_back({"r-1", r - Rational(1), 0, false});
  out.push_back({"r+1", r + Rational(1), 0, false});
  out.push_back({"y", y, 0, false});
  out.push_back({"(x-1)^2+y^2-r^2", xm * xm + y * y - r * r, 0, false});
  out.push_back({"(x-1)^2(r^2n^2+n^2-1)-(y-r)^2", xm * xm * (r * r * n * n + n * n - Rational(1)) - pow(y - r, 2), 0, false});
  // Not in the published list: for |n| = 1 the grazing rays are the tangent
  // lines from A, which then are components of the envelope.
  out.push_back({"r^2x^2-(1-r^2)y^2", r * r * x * x + (r * r - Rational(1)) * y * y, 0, true});
  return out;
}

CausticResult strip_spurious(CausticResult result, const std::optional<std::pair<Rational, Rational>>& rn) {
  MPoly rem = result.raw;
  result.stripped = spurious_factors(rn);
  for (auto& sf : result.stripped) {
    sf.multiplicity = 0;
    if (sf.factor.is_zero() || sf.factor.is_constant()) continue;
    while (auto q = exact_div(rem, sf.factor)) {
      rem = std::move(*q);
      ++sf.multiplicity;
    }
  }
  auto [content, prim] = content_and_primitive(rem);
  result.content = content;
  result.caustic_poly = std::move(prim);
  result.specialized_at = rn;
  return result;
}

bool reconstructs(const CausticResult& result) {
  MPoly acc = result.content * result.caustic_poly;
  for (const auto& sf : result.stripped)
    if (sf.multiplicity > 0) acc *= pow(sf.factor, static_cast<unsigned>(sf.multiplicity));
  return acc == result.raw;
}

EdSystem ed_system(const MPoly& g_in, std::string_view gx, std::string_view gy) {
  for (const auto& v : g_in.vars())
    if (v != gx && v != gy && g_in.involves(v))
      throw Error(ErrorKind::Internal, "curve equation involves unexpected variable '" + v + "'");
  const MPoly::VarList vars{"x", "y", "x0", "y0"};
  MPoly g = rename(g_in, {{std::string(gx), "x0"}, {std::string(gy), "y0"}}).with_vars(vars);
  MPoly x = MPoly::variable("x").with_vars(vars);
  MPoly y = MPoly::variable("y").with_vars(vars);
  MPoly x0 = MPoly::variable("x0").with_vars(vars);
  MPoly y0 = MPoly::variable("y0").with_vars(vars);
  MPoly gx0 = derivative(g, "x0");
  MPoly gy0 = derivative(g, "y0");
  MPoly h = (x0 - x) * gy0 - (y0 - y) * gx0;
  MPoly j = gx0 * derivative(h, "y0") - gy0 * derivative(h, "x0");
  return {g, h, j};
}

std::optional<Point2d> curvature_center(const MPoly& p, const Point2d& m, std::string_view gx,
                                        std::string_view gy) {
  MPoly px = derivative(p, gx), py = derivative(p, gy);
  MPoly pxx = derivative(px, gx), pxy = derivative(px, gy), pyy = derivative(py, gy);
  std::vector<double> at(p.num_vars(), 0.0);
  if (auto i = p.var_index(gx)) at[*i] = m.x;
  if (auto i = p.var_index(gy)) at[*i] = m.y;
  auto ev = [&](const MPoly& q) { return q.with_vars(p.vars()).eval(at); };
  double fx = ev(px), fy = ev(py);
  double denom = ev(pxx) * fy * fy - 2 * ev(pxy) * fx * fy + ev(pyy) * fx * fx;
  double g2 = fx * fx + fy * fy;
  if (g2 == 0.0 || std::abs(denom) < 1e-12 * std::pow(g2, 1.5)) return std::nullopt;
  return Point2d{m.x - fx * g2 / denom, m.y - fy * g2 / denom};
}

std::vector<Point2d> curvature_centers(const OvalD& oval, int count) {
  std::vector<Point2d> out;
  for (const Point2d& m : sample_branch(oval, count)) {
    Point2d g{0, 0};
    double hxx = 0, hxy = 0, hyy = 0;
    auto add_focus = [&](const Point2d& f, double w) {
      Point2d d = m - f;
      double rho = norm(d);
      Point2d u = d / rho;
      g = g + w * u;
      hxx += w * (1 - u.x * u.x) / rho;
      hxy += w * (-u.x * u.y) / rho;
      hyy += w * (1 - u.y * u.y) / rho;
    };
    add_focus(oval.a, oval.branch);
    if (oval.s != 0.0) add_focus(oval.b, oval.s);
    double g2 = norm_sq(g);
    double denom = hxx * g.y * g.y - 2 * hxy * g.x * g.y + hyy * g.x * g.x;
    if (g2 == 0.0 || std::abs(denom) < 1e-12 * std::pow(g2, 1.5)) continue;
    out.push_back(m - (g2 / denom) * g);
  }
  return out;
}

RayFamily::RayFamily(Scened scene, int scan) : scene_(std::move(scene)) {
  const double two_pi = 2 * std::numbers::pi;
  std::vector<bool> ok(static_cast<std::size_t>(scan));
  for (int k = 0; k < scan; ++k) ok[k] = ray(two_pi * (k + 0.5) / scan).has_value();
  // Pushes the boundary between a valid and an invalid theta onto the valid side.
  auto refine = [&](double valid, double invalid) {
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (valid + invalid);
      (ray(mid) ? valid : invalid) = mid;
    }
    return valid;
  };
  const double step = two_pi / scan;
  for (int k = 0; k < scan;) {
    if (!ok[k]) {
      ++k;
      continue;
    }
    int start = k;
    while (k < scan && ok[k]) ++k;
    double lo = start == 0 ? 0.0 : refine(step * (start + 0.5), step * (start - 0.5));
    double hi = k == scan ? two_pi : refine(step * (k - 0.5), step * (k + 0.5));
    validity_.push_back({lo, hi});
  }
  // Join the interval ending at 2 pi with the one starting at 0.
  if (validity_.size() >= 2 && validity_.front().lo == 0.0 && validity_.back().hi == two_pi) {
    validity_.front().lo = validity_.back().lo - two_pi;
    validity_.pop_back();
  }
}

Point2d RayFamily::mirror_point(double theta) const {
  if (const auto* c = std::get_if<Circle2d>(&scene_.mirror)) {
    double r = std::sqrt(c->radius_sq);
    return c->center + r * Point2d{std::cos(theta), std::sin(theta)};
  }
  const auto& l = std::get<Line2d>(scene_.mirror);
  return l.base + std::tan(0.5 * (theta - std::numbers::pi)) * l.dir;
}

std::optional<Line2d> RayFamily::ray(double theta) const {
  try {
    return try_refract(scene_, mirror_point(theta));
  } catch (const Error&) {
    return std::nullopt;
  }
}

namespace {

std::optional<Point2d> adjacent_intersection(const RayFamily& family, double t0, double t1, double max_cond) {
  auto l0 = family.ray(t0), l1 = family.ray(t1);
  if (!l0 || !l1) return std::nullopt;
  Point2d d0 = normalized(l0->dir), d1 = normalized(l1->dir);
  double c = cross(d0, d1);
  if (!(std::abs(c) * max_cond > 1.0)) return std::nullopt;
  double lambda = cross(l1->base - l0->base, d1) / c;
  Point2d p = l0->base + lambda * d0;
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) return std::nullopt;
  return p;
}

std::vector<Point2d> envelope(const RayFamily& family, const EnvelopeOptions& options, bool parallel) {
  std::vector<Point2d> out;
  if (options.count < 2) return out;
  for (const Interval& iv : family.validity()) {
    const double delta = (iv.hi - iv.lo) / options.count;
    const int pairs = options.count - 1;
    std::vector<std::optional<Point2d>> slot(static_cast<std::size_t>(pairs));
#pragma omp parallel for schedule(static) num_threads(max_threads()) if (parallel)
    for (int i = 0; i < pairs; ++i) {
      double t0 = iv.lo + (i + 0.5) * delta;
      slot[static_cast<std::size_t>(i)] = adjacent_intersection(family, t0, t0 + delta, options.max_condition);
    }
    for (const auto& p : slot)
      if (p) out.push_back(*p);
  }
  return out;
}

}  // namespace

std::vector<Point2d> numeric_envelope(const RayFamily& family, const EnvelopeOptions& options) {
  return envelope(family, options, true);
}

std::vector<Point2d> numeric_envelope_serial(const RayFamily& family, const EnvelopeOptions& options) {
  return envelope(family, options, false);
}

double scaled_residual(const MPoly& e, const Point2d& p) {
  std::vector<double> at(e.num_vars(), 0.0);
  if (auto i = e.var_index("x")) at[*i] = p.x;
  if (auto i = e.var_index("y")) at[*i] = p.y;
  double scale = e.coefficient_norm1() * std::pow(std::max(1.0, norm(p)), std::max(0, e.total_degree()));
  return std::abs(e.eval(at)) / scale;
}

Rational normalized_radius(const Sceneq& scene) {
  auto normalized = normalize_scene(scene);
  return require_sqrt(normalized.scene.circle().radius_sq, "normalized radius");
}

namespace {

// For |n| = 1 one family is the undeviated pencil through A; its "envelope" is A.
bool passes_through_radiant(const RayFamily& family) {
  const Point2d& a = family.scene().radiant_point();
  int checked = 0;
  for (const auto& iv : family.validity()) {
    for (double s : {0.25, 0.5, 0.75}) {
      auto ray = family.ray(iv.lo + s * (iv.hi - iv.lo));
      if (!ray) continue;
      if (distance_to_line(*ray, a) > 1e-9 * std::max(1.0, norm(a))) return false;
      ++checked;
    }
  }
  return checked > 0;
}

}  // namespace

CrossVerifyReport cross_verify(const Sceneq& scene, const CrossVerifyOptions& options) {
  CrossVerifyReport rep;
  auto normalized = normalize_scene(scene);
  rep.r = require_sqrt(normalized.scene.circle().radius_sq, "normalized radius");
  rep.n = scene.n;
  std::pair<Rational, Rational> rn{rep.r, rep.n};

  auto start = Clock::now();
  rep.envelope = strip_spurious(envelope_resultant(build_family(rep.r, rep.n)), rn);
  rep.seconds_envelope = seconds_since(start);

  start = Clock::now();
  auto ovals = from_circle_scene(normalized.scene);
  rep.oval_quartic = quartic_closure(ovals[0]);
  EvoluteOptions eo;
  for (const auto& oval : ovals) {
    auto centers = curvature_centers(to_double(oval), 10);
    eo.referee.insert(eo.referee.end(), centers.begin(), centers.end());
  }
  rep.evolute = evolute_eliminate(rep.oval_quartic, eo);
  rep.seconds_evolute = seconds_since(start);

  if (!(rep.envelope.caustic_poly == rep.evolute))
    throw PipelineMismatchError(rep.envelope.caustic_poly, rep.evolute);
  rep.degree = rep.evolute.total_degree();
  rep.terms = rep.evolute.size();

  start = Clock::now();
  Scened base = to_double(normalized.scene);
  for (double n : {std::abs(base.n), -std::abs(base.n)}) {
    RayFamily family(base.with_n(n));
    if (passes_through_radiant(family)) {
      ++rep.pencils_skipped;
      continue;
    }
    auto points = numeric_envelope(family, {options.envelope_count, 1e8});
    for (const auto& p : points) {
      double res = scaled_residual(rep.evolute, p);
      rep.max_residual = std::max(rep.max_residual, res);
      if (!(res < options.residual_tol)) ++rep.residual_failures;
    }
    rep.numeric_points += points.size();
  }
  rep.seconds_numeric = seconds_since(start);
  return rep;
}

}  // namespace caustica
