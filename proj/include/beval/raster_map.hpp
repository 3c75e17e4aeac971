#pragma once

#include <filesystem>
#include <vector>

#include "beval/geometry.hpp"
#include "beval/grid.hpp"
#include "beval/image.hpp"
#include "beval/morphology.hpp"

namespace beval {

// RGB map raster. Pixel (row, col) covers the map-frame square
// [origin + col*res, origin + (col+1)*res) x [origin + row*res, ...).
struct RasterMap {
  ImageU8 image;
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  double resolution = 0.1;  // meters per pixel

  void validate() const {
    if (!(resolution > 0.0)) throw ValidationError("raster map: resolution must be positive");
    if (image.channels != 3) throw ValidationError("raster map: image must be RGB");
  }
};

struct ColorTarget {
  uint8_t r = 0, g = 0, b = 0;
  int tol_r = 0, tol_g = 0, tol_b = 0;
};

struct ColorFilterSpec {
  std::vector<ColorTarget> targets;

  void validate() const {
    for (const auto& t : targets)
      if (t.tol_r < 0 || t.tol_g < 0 || t.tol_b < 0)
        throw ValidationError("color filter: tolerances must be >= 0");
  }

  bool matches(uint8_t r, uint8_t g, uint8_t b) const {
    for (const auto& t : targets)
      if (std::abs(int(r) - t.r) <= t.tol_r && std::abs(int(g) - t.g) <= t.tol_g &&
          std::abs(int(b) - t.b) <= t.tol_b)
        return true;
    return false;
  }
};

// Drivable-area extraction from a raster map, in order: (1) nearest-neighbor
// crop of the extent x extent window around the ego at native map resolution
// (out-of-map pixels are background), (2) color-filter mask, (3) morphological
// closing, (4) block-majority downscale to the grid resolution (ties -> 1).
// Requires the grid resolution to be an integer multiple of the map
// resolution. A crop that misses the map entirely yields an all-zero grid and
// appends a note to `warnings` when given.
SemanticGrid rasterize_raster_map(const RasterMap& map, const Pose& ego_to_map,
                                  const GridSpec& spec, const ColorFilterSpec& filter,
                                  const StructuringElement& se,
                                  std::vector<std::string>* warnings = nullptr);

// PNG + JSON meta ({"origin": [x, y], "resolution": r}).
RasterMap load_raster_map(const std::filesystem::path& image_path,
                          const std::filesystem::path& meta_path);
void save_raster_map(const RasterMap& map, const std::filesystem::path& image_path,
                     const std::filesystem::path& meta_path, int compression = 6);

// Per-dataset palette config: {"targets": [{"color": [r,g,b], "tolerance": [r,g,b]}]}.
ColorFilterSpec load_color_filter(const std::filesystem::path& path);

}  // namespace beval
