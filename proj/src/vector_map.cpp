#include "beval/vector_map.hpp"

#include <fstream>

#include "json.hpp"

namespace beval {

using nlohmann::json;

bool point_in_polygon(const Eigen::Vector2d& p, const std::vector<Eigen::Vector2d>& poly) {
  bool inside = false;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      double x_cross = (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x();
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

SemanticGrid rasterize_vector_map(const VectorMap& map, const Pose& ego_to_map,
                                  const GridSpec& spec, ClassLabel label) {
  map.validate();
  if (!ego_to_map.is_valid())
    throw ValidationError("rasterize_vector_map: invalid ego pose");
  SemanticGrid grid = SemanticGrid::binary(spec, {label});
  for (int row = 0; row < spec.cells_per_side; ++row) {
    for (int col = 0; col < spec.cells_per_side; ++col) {
      Eigen::Vector3d p_map = ego_to_map.apply(
          {spec.cell_center_x(col), spec.cell_center_y(row), 0.0});
      Eigen::Vector2d q(p_map.x(), p_map.y());
      for (const auto& poly : map.polygons) {
        if (poly.label != label) continue;
        if (point_in_polygon(q, poly.vertices)) {
          grid.at(0, row, col) = 1;
          break;
        }
      }
    }
  }
  return grid;
}

VectorMap load_vector_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open vector map: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("vector map parse error: " + std::string(e.what()));
  }
  VectorMap map;
  try {
    for (const json& f : j.at("features")) {
      MapPolygon poly;
      poly.label = class_from_name(f.at("properties").at("class").get<std::string>());
      const json& ring = f.at("geometry").at("coordinates").at(0);
      for (const json& v : ring)
        poly.vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
      // GeoJSON repeats the first vertex to close the ring; we store it open.
      if (poly.vertices.size() >= 2 && poly.vertices.front() == poly.vertices.back())
        poly.vertices.pop_back();
      map.polygons.push_back(std::move(poly));
    }
  } catch (const json::exception& e) {
    throw ValidationError("vector map schema error in " + path.string() + ": " + e.what());
  }
  map.validate();
  return map;
}

void save_vector_map(const VectorMap& map, const std::filesystem::path& path) {
  json features = json::array();
  for (const auto& poly : map.polygons) {
    json ring = json::array();
    for (const auto& v : poly.vertices) ring.push_back({v.x(), v.y()});
    ring.push_back({poly.vertices.front().x(), poly.vertices.front().y()});
    features.push_back({{"type", "Feature"},
                        {"properties", {{"class", class_name(poly.label)}}},
                        {"geometry", {{"type", "Polygon"}, {"coordinates", {ring}}}}});
  }
  json j = {{"type", "FeatureCollection"}, {"features", features}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write vector map: " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace beval
