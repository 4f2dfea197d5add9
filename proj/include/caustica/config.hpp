#pragma once

// Scene files: `key = value` lines grouped in [sections], `#` comments.
//
//   [radiant]            point = 0, 0        (or: dir = 1, 0 for infinity)
//   [mirror]             circle.center = 1, 0
//                        circle.radius = 1/3  (or circle.radius_sq = ...)
//                        (or: line.point = 1, 0 / line.dir = 0, 1)
//   [scene]              n = 1/2
//   [render]             viewport, size, rays, grid, envelope, color.<layer>
//
// Scalars in the scene sections are exact rationals ("p/q", integers or
// decimals); render values are plain numbers.

#include <map>
#include <string>
#include <string_view>

#include "caustica/geom.hpp"

namespace caustica {

struct Viewport {
  double xmin = -1.0, ymin = -1.0, xmax = 1.0, ymax = 1.0;
};

struct RenderSpec {
  Viewport viewport{-0.5, -1.0, 2.0, 1.0};
  int width = 800;
  int height = 640;
  int rays = 64;        // rays per family
  int grid = 512;       // marching-squares resolution (>= 16)
  int envelope = 1024;  // numeric envelope samples per validity interval
  std::map<std::string, std::string> colors{{"rays_pos", "blue"}, {"rays_neg", "orange"}, {"caustic", "red"},
                                            {"ovals", "green"},   {"mirror", "black"},    {"radiant", "black"}};
};

struct SceneConfig {
  Sceneq scene;
  RenderSpec render;
};

/// Throws Error(ConfigError) with "line L, column C" diagnostics.
SceneConfig parse_config(std::string_view text);
SceneConfig load_config(const std::string& path);

/// Canonical text; parse_config(print_config(c)) prints identically.
std::string print_config(const SceneConfig& config);

/// "%.6g" formatting used by every text and SVG output.
std::string fmt6(double v);

}  // namespace caustica
