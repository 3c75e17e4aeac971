#pragma once

#include <vector>

#include "beval/grid.hpp"

namespace beval {

// BEV footprint rasterization: a cell is set iff its center lies inside the
// rotated rectangle (center.xy, length x width, yaw) of any box carrying
// `label`. Boundary points count as inside. No visibility filtering.
SemanticGrid rasterize_boxes(const std::vector<BoxAnnotation>& boxes, ClassLabel label,
                             const GridSpec& spec);

// Cell-center membership test shared by the rasterizer.
inline bool point_in_box_footprint(double x, double y, const BoxAnnotation& box,
                                   double cos_yaw, double sin_yaw) {
  double dx = x - box.center.x();
  double dy = y - box.center.y();
  double u = cos_yaw * dx + sin_yaw * dy;
  double v = -sin_yaw * dx + cos_yaw * dy;
  return std::abs(u) <= box.length / 2.0 && std::abs(v) <= box.width / 2.0;
}

}  // namespace beval
