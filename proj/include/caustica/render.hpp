#pragma once

#include <string>
#include <vector>

#include "caustica/config.hpp"
#include "caustica/poly.hpp"

namespace caustica {

struct Segment {
  Point2d a;
  Point2d b;
};

/// Zero set of the bivariate polynomial p(gx, gy) on a grid x grid lattice
/// covering the viewport. Saddle cells are resolved by the cell-center value.
/// Both versions return the same segments in the same (row-major) order.
std::vector<Segment> marching_squares(const MPoly& p, const Viewport& viewport, int grid, std::string_view gx = "x",
                                      std::string_view gy = "y");
std::vector<Segment> marching_squares_serial(const MPoly& p, const Viewport& viewport, int grid,
                                             std::string_view gx = "x", std::string_view gy = "y");

struct RenderLayers {
  std::vector<Line2d> rays_pos;
  std::vector<Line2d> rays_neg;
  std::vector<Point2d> caustic;
  std::vector<Segment> ovals;
};

/// Rays, numeric envelope points and the Cartesian ovals of the scene.
RenderLayers compute_layers(const SceneConfig& config);

/// Deterministic SVG (all numbers "%.6g").
std::string render_svg(const SceneConfig& config, const RenderLayers& layers);

}  // namespace caustica
