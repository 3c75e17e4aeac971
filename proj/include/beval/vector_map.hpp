#pragma once

#include <filesystem>
#include <vector>

#include "beval/geometry.hpp"
#include "beval/grid.hpp"

namespace beval {

// Closed 2D polygon in map-frame meters; the first vertex is not repeated.
struct MapPolygon {
  ClassLabel label = ClassLabel::DrivableArea;
  std::vector<Eigen::Vector2d> vertices;
};

struct VectorMap {
  std::vector<MapPolygon> polygons;

  void validate() const {
    for (const auto& p : polygons)
      if (p.vertices.size() < 3)
        throw ValidationError("vector map: polygon with fewer than 3 vertices");
  }
};

// Even-odd point-in-polygon test (horizontal crossing count).
bool point_in_polygon(const Eigen::Vector2d& p, const std::vector<Eigen::Vector2d>& poly);

// A cell is set iff its center, transformed to the map frame by ego_to_map,
// lies inside any polygon of the requested class.
SemanticGrid rasterize_vector_map(const VectorMap& map, const Pose& ego_to_map,
                                  const GridSpec& spec, ClassLabel label);

// GeoJSON-style FeatureCollection of Polygon features with a "class" property.
VectorMap load_vector_map(const std::filesystem::path& path);
void save_vector_map(const VectorMap& map, const std::filesystem::path& path);

}  // namespace beval
