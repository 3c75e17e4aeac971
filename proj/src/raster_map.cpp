#include "beval/raster_map.hpp"

#include <cmath>
#include <fstream>

#include "beval/png_io.hpp"
#include "json.hpp"

namespace beval {

using nlohmann::json;

SemanticGrid rasterize_raster_map(const RasterMap& map, const Pose& ego_to_map,
                                  const GridSpec& spec, const ColorFilterSpec& filter,
                                  const StructuringElement& se,
                                  std::vector<std::string>* warnings) {
  map.validate();
  filter.validate();
  se.validate();
  if (!ego_to_map.is_valid())
    throw ValidationError("rasterize_raster_map: invalid ego pose");

  const double block_f = spec.resolution / map.resolution;
  const int block = static_cast<int>(std::round(block_f));
  if (std::abs(block_f - block) > 1e-9 || block < 1)
    throw ValidationError(
        "rasterize_raster_map: grid resolution must be an integer multiple of map resolution");
  const int crop_side = block * spec.cells_per_side;

  // (1) + (2): sample the rotated window and filter in one pass; the mask is
  // what downstream morphology sees, so fusing the steps changes nothing.
  Mask mask = Mask::make(crop_side, crop_side);
  const double half = spec.extent / 2.0;
  bool any_inside = false;
  for (int wy = 0; wy < crop_side; ++wy) {
    double ey = (wy + 0.5) * map.resolution - half;
    for (int wx = 0; wx < crop_side; ++wx) {
      double ex = (wx + 0.5) * map.resolution - half;
      Eigen::Vector3d p = ego_to_map.apply({ex, ey, 0.0});
      int col = static_cast<int>(std::floor((p.x() - map.origin.x()) / map.resolution));
      int row = static_cast<int>(std::floor((p.y() - map.origin.y()) / map.resolution));
      if (col < 0 || col >= map.image.width || row < 0 || row >= map.image.height) continue;
      any_inside = true;
      if (filter.matches(map.image.at(row, col, 0), map.image.at(row, col, 1),
                         map.image.at(row, col, 2)))
        mask.at(wy, wx) = 1;
    }
  }
  if (!any_inside && warnings)
    warnings->push_back("raster map crop lies entirely outside the map");

  // (3)
  Mask closed = close(mask, se);

  // (4) block-majority vote, ties resolved to drivable.
  SemanticGrid grid = SemanticGrid::binary(spec, {ClassLabel::DrivableArea});
  const int threshold2 = block * block;  // compare 2*count >= block^2
  for (int row = 0; row < spec.cells_per_side; ++row) {
    for (int col = 0; col < spec.cells_per_side; ++col) {
      int count = 0;
      for (int by = 0; by < block; ++by) {
        const uint8_t* line = closed.data.data() +
                              static_cast<size_t>(row * block + by) * crop_side + col * block;
        for (int bx = 0; bx < block; ++bx) count += line[bx];
      }
      if (2 * count >= threshold2) grid.at(0, row, col) = 1;
    }
  }
  return grid;
}

RasterMap load_raster_map(const std::filesystem::path& image_path,
                          const std::filesystem::path& meta_path) {
  RasterMap map;
  map.image = load_png(image_path);
  std::ifstream in(meta_path);
  if (!in) throw IoError("cannot open map meta: " + meta_path.string());
  json j;
  try {
    in >> j;
    map.origin = {j.at("origin").at(0).get<double>(), j.at("origin").at(1).get<double>()};
    map.resolution = j.at("resolution").get<double>();
  } catch (const json::exception& e) {
    throw ValidationError("map meta error in " + meta_path.string() + ": " + e.what());
  }
  map.validate();
  return map;
}

void save_raster_map(const RasterMap& map, const std::filesystem::path& image_path,
                     const std::filesystem::path& meta_path, int compression) {
  map.validate();
  save_png(map.image, image_path, compression);
  json j = {{"origin", {map.origin.x(), map.origin.y()}}, {"resolution", map.resolution}};
  std::ofstream out(meta_path, std::ios::binary);
  if (!out) throw IoError("cannot write map meta: " + meta_path.string());
  out << j.dump(2) << "\n";
}

ColorFilterSpec load_color_filter(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open color filter config: " + path.string());
  json j;
  ColorFilterSpec spec;
  try {
    in >> j;
    for (const json& t : j.at("targets")) {
      ColorTarget target;
      target.r = t.at("color").at(0).get<int>();
      target.g = t.at("color").at(1).get<int>();
      target.b = t.at("color").at(2).get<int>();
      target.tol_r = t.at("tolerance").at(0).get<int>();
      target.tol_g = t.at("tolerance").at(1).get<int>();
      target.tol_b = t.at("tolerance").at(2).get<int>();
      spec.targets.push_back(target);
    }
  } catch (const json::exception& e) {
    throw ValidationError("color filter config error in " + path.string() + ": " + e.what());
  }
  spec.validate();
  return spec;
}

}  // namespace beval
