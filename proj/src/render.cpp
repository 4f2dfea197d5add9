#include "caustica/render.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "caustica/caustic.hpp"
#include "caustica/oval.hpp"
#include "caustica/parallel.hpp"

namespace caustica {

namespace {

// Dense coefficients c[i][j] of x^i y^j; other variables must be absent.
struct Dense {
  std::vector<std::vector<double>> c;

  Dense(const MPoly& p, std::string_view gx, std::string_view gy) {
    auto ix = p.var_index(gx);
    auto iy = p.var_index(gy);
    for (std::size_t v = 0; v < p.num_vars(); ++v)
      if ((!ix || v != *ix) && (!iy || v != *iy) && p.degree_in(p.vars()[v]) > 0)
        throw Error(ErrorKind::InvalidScene, "marching squares needs a polynomial in two variables");
    int dx = std::max(0, p.degree_in(gx));
    int dy = std::max(0, p.degree_in(gy));
    c.assign(dx + 1, std::vector<double>(dy + 1, 0.0));
    for (const auto& t : p.terms()) {
      int i = ix ? p.exponent(t, *ix) : 0;
      int j = iy ? p.exponent(t, *iy) : 0;
      c[i][j] = to_double(t.coef);
    }
  }

  // Values at x_0..x_n for fixed y.
  void row(double y, const std::vector<double>& xs, double* out) const {
    std::vector<double> q(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      double acc = 0.0;
      for (std::size_t j = c[i].size(); j-- > 0;) acc = acc * y + c[i][j];
      q[i] = acc;
    }
    for (std::size_t k = 0; k < xs.size(); ++k) {
      double acc = 0.0;
      for (std::size_t i = q.size(); i-- > 0;) acc = acc * xs[k] + q[i];
      out[k] = acc;
    }
  }
};

struct Lattice {
  int n;
  std::vector<double> xs, ys;
  std::vector<double> v;  // (n+1) x (n+1), row index = y
  double at(int i, int j) const { return v[static_cast<std::size_t>(j) * (n + 1) + i]; }
};

Lattice make_lattice(const Viewport& vp, int grid) {
  if (grid < 16) throw Error(ErrorKind::ConfigError, "grid must be at least 16");
  Lattice l{grid, std::vector<double>(grid + 1), std::vector<double>(grid + 1),
            std::vector<double>(static_cast<std::size_t>(grid + 1) * (grid + 1))};
  for (int k = 0; k <= grid; ++k) {
    l.xs[k] = vp.xmin + (vp.xmax - vp.xmin) * k / grid;
    l.ys[k] = vp.ymin + (vp.ymax - vp.ymin) * k / grid;
  }
  return l;
}

Point2d edge_point(const Point2d& p, double vp, const Point2d& q, double vq) {
  double s = vp / (vp - vq);
  if (!std::isfinite(s)) s = 0.5;
  return {p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)};
}

void cell_segments(const Lattice& l, const Dense& d, int i, int j, std::vector<Segment>& out) {
  // corners counterclockwise from bottom-left
  std::array<Point2d, 4> p{{{l.xs[i], l.ys[j]}, {l.xs[i + 1], l.ys[j]}, {l.xs[i + 1], l.ys[j + 1]}, {l.xs[i], l.ys[j + 1]}}};
  std::array<double, 4> v{l.at(i, j), l.at(i + 1, j), l.at(i + 1, j + 1), l.at(i, j + 1)};
  int mask = 0;
  for (int k = 0; k < 4; ++k)
    if (v[k] > 0) mask |= 1 << k;
  if (mask == 0 || mask == 15) return;
  auto e = [&](int k) { return edge_point(p[k], v[k], p[(k + 1) % 4], v[(k + 1) % 4]); };
  // edge k joins corner k and k+1
  std::vector<std::pair<int, int>> pairs;
  switch (mask) {
    case 1: case 14: pairs = {{3, 0}}; break;
    case 2: case 13: pairs = {{0, 1}}; break;
    case 3: case 12: pairs = {{3, 1}}; break;
    case 4: case 11: pairs = {{1, 2}}; break;
    case 6: case 9: pairs = {{0, 2}}; break;
    case 7: case 8: pairs = {{2, 3}}; break;
    case 5: case 10: {
      double center = 0.0;
      double cx = 0.5 * (p[0].x + p[1].x), cy = 0.5 * (p[0].y + p[2].y);
      d.row(cy, {cx}, &center);
      bool center_pos = center > 0;
      bool corner0_pos = (mask & 1) != 0;
      if (center_pos == corner0_pos)
        pairs = {{0, 1}, {2, 3}};  // corner 0 connects through the middle to corner 2
      else
        pairs = {{3, 0}, {1, 2}};
      break;
    }
    default: break;
  }
  for (auto [a, b] : pairs) out.push_back({e(a), e(b)});
}

std::vector<Segment> run(const MPoly& p, const Viewport& vp, int grid, std::string_view gx, std::string_view gy,
                         bool parallel) {
  Dense d(p, gx, gy);
  Lattice l = make_lattice(vp, grid);
  std::vector<std::vector<Segment>> rows(grid);
  int threads = parallel ? max_threads() : 1;
#pragma omp parallel for schedule(static) num_threads(threads)
  for (int j = 0; j <= grid; ++j) d.row(l.ys[j], l.xs, &l.v[static_cast<std::size_t>(j) * (grid + 1)]);
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (int j = 0; j < grid; ++j)
    for (int i = 0; i < grid; ++i) cell_segments(l, d, i, j, rows[j]);
  std::vector<Segment> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

// `count` rays spread evenly over the union of the validity intervals.
std::vector<Line2d> sample_rays(const Scened& scene, int count) {
  std::vector<Line2d> rays;
  if (count <= 0) return rays;
  RayFamily family(scene, 4096);
  double total = 0.0;
  for (const auto& iv : family.validity()) total += iv.hi - iv.lo;
  if (total <= 0.0) return rays;
  for (int k = 0; k < count; ++k) {
    double u = total * (k + 0.5) / count;
    for (const auto& iv : family.validity()) {
      double w = iv.hi - iv.lo;
      if (u <= w) {
        if (auto l = family.ray(iv.lo + u)) rays.push_back(*l);
        break;
      }
      u -= w;
    }
  }
  return rays;
}

// Clip an infinite line to the viewport rectangle (Liang-Barsky on a long segment).
std::optional<Segment> clip(const Line2d& l, const Viewport& vp) {
  double len = std::hypot(l.dir.x, l.dir.y);
  if (len == 0.0) return std::nullopt;
  Point2d d{l.dir.x / len, l.dir.y / len};
  double big = 4.0 * (std::abs(vp.xmax - vp.xmin) + std::abs(vp.ymax - vp.ymin) + std::abs(l.base.x) + std::abs(l.base.y));
  double t0 = -big, t1 = big;
  auto bound = [&](double p, double q) {
    if (p == 0.0) return q >= 0.0;
    double r = q / p;
    if (p < 0) t0 = std::max(t0, r);
    else t1 = std::min(t1, r);
    return t0 <= t1;
  };
  if (!bound(-d.x, l.base.x - vp.xmin) || !bound(d.x, vp.xmax - l.base.x) || !bound(-d.y, l.base.y - vp.ymin) ||
      !bound(d.y, vp.ymax - l.base.y))
    return std::nullopt;
  return Segment{{l.base.x + t0 * d.x, l.base.y + t0 * d.y}, {l.base.x + t1 * d.x, l.base.y + t1 * d.y}};
}

}  // namespace

std::vector<Segment> marching_squares(const MPoly& p, const Viewport& vp, int grid, std::string_view gx,
                                      std::string_view gy) {
  return run(p, vp, grid, gx, gy, true);
}

std::vector<Segment> marching_squares_serial(const MPoly& p, const Viewport& vp, int grid, std::string_view gx,
                                             std::string_view gy) {
  return run(p, vp, grid, gx, gy, false);
}

RenderLayers compute_layers(const SceneConfig& config) {
  RenderLayers layers;
  Scened scene = to_double(config.scene);
  double n = std::abs(scene.n);
  layers.rays_pos = sample_rays(scene.with_n(n), config.render.rays);
  layers.rays_neg = sample_rays(scene.with_n(-n), config.render.rays);
  if (config.render.envelope > 0) {
    for (double sn : {n, -n}) {
      RayFamily family(scene.with_n(sn));
      auto pts = numeric_envelope(family, {config.render.envelope, 1e8});
      layers.caustic.insert(layers.caustic.end(), pts.begin(), pts.end());
    }
  }
  if (config.scene.finite_radiant()) {
    std::vector<MPoly> curves;
    try {
      if (config.scene.circle_mirror())
        curves.push_back(quartic_closure(from_circle_scene(config.scene)[0]));
      else
        curves.push_back(quartic_closure(from_line_scene(config.scene)));
    } catch (const Error&) {
      // no oval for this scene (e.g. |n| = 1 with a line mirror)
    }
    for (const auto& c : curves) {
      if (c.total_degree() < 1) continue;
      auto segs = marching_squares(c, config.render.viewport, config.render.grid);
      layers.ovals.insert(layers.ovals.end(), segs.begin(), segs.end());
    }
  }
  return layers;
}

std::string render_svg(const SceneConfig& config, const RenderLayers& layers) {
  const RenderSpec& r = config.render;
  const Viewport& vp = r.viewport;
  auto px = [&](double x) { return fmt6((x - vp.xmin) / (vp.xmax - vp.xmin) * r.width); };
  auto py = [&](double y) { return fmt6((vp.ymax - y) / (vp.ymax - vp.ymin) * r.height); };
  double unit = r.width / (vp.xmax - vp.xmin);
  auto color = [&](const char* layer) { return r.colors.at(layer); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << r.width << "\" height=\"" << r.height
    << "\" viewBox=\"0 0 " << r.width << " " << r.height << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto line_group = [&](const char* id, const char* layer, const std::vector<Line2d>& lines) {
    s << "<g id=\"" << id << "\" stroke=\"" << color(layer) << "\" stroke-width=\"0.5\" stroke-opacity=\"0.6\">\n";
    for (const auto& l : lines)
      if (auto seg = clip(l, vp))
        s << "<line x1=\"" << px(seg->a.x) << "\" y1=\"" << py(seg->a.y) << "\" x2=\"" << px(seg->b.x) << "\" y2=\""
          << py(seg->b.y) << "\"/>\n";
    s << "</g>\n";
  };
  line_group("rays-pos", "rays_pos", layers.rays_pos);
  line_group("rays-neg", "rays_neg", layers.rays_neg);

  s << "<g id=\"ovals\" stroke=\"" << color("ovals") << "\" stroke-width=\"1.2\" fill=\"none\">\n";
  if (!layers.ovals.empty()) {
    s << "<path d=\"";
    for (const auto& seg : layers.ovals)
      s << "M" << px(seg.a.x) << " " << py(seg.a.y) << "L" << px(seg.b.x) << " " << py(seg.b.y);
    s << "\"/>\n";
  }
  s << "</g>\n";

  s << "<g id=\"caustic\" fill=\"" << color("caustic") << "\">\n";
  for (const auto& p : layers.caustic)
    if (p.x >= vp.xmin && p.x <= vp.xmax && p.y >= vp.ymin && p.y <= vp.ymax)
      s << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"0.8\"/>\n";
  s << "</g>\n";

  s << "<g id=\"mirror\" stroke=\"" << color("mirror") << "\" stroke-width=\"1.5\" fill=\"none\">\n";
  Scened scene = to_double(config.scene);
  if (scene.circle_mirror()) {
    const auto& c = scene.circle();
    s << "<circle cx=\"" << px(c.center.x) << "\" cy=\"" << py(c.center.y) << "\" r=\"" << fmt6(c.radius() * unit)
      << "\"/>\n";
  } else if (auto seg = clip(scene.line(), vp)) {
    s << "<line x1=\"" << px(seg->a.x) << "\" y1=\"" << py(seg->a.y) << "\" x2=\"" << px(seg->b.x) << "\" y2=\""
      << py(seg->b.y) << "\"/>\n";
  }
  s << "</g>\n";

  if (scene.finite_radiant()) {
    const auto& a = scene.radiant_point();
    s << "<g id=\"radiant\" fill=\"" << color("radiant") << "\">\n<circle cx=\"" << px(a.x) << "\" cy=\"" << py(a.y)
      << "\" r=\"3\"/>\n</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace caustica
