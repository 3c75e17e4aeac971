#include "beval/boxes_raster.hpp"

#include <cmath>

namespace beval {

SemanticGrid rasterize_boxes(const std::vector<BoxAnnotation>& boxes, ClassLabel label,
                             const GridSpec& spec) {
  SemanticGrid grid = SemanticGrid::binary(spec, {label});
  const int n = spec.cells_per_side;
  const double half = spec.extent / 2.0;
  for (const BoxAnnotation& box : boxes) {
    if (box.label != label) continue;
    box.validate();
    const double c = std::cos(box.yaw);
    const double s = std::sin(box.yaw);
    // Axis-aligned bounds of the rotated footprint limit the cell scan.
    const double ex = (std::abs(c) * box.length + std::abs(s) * box.width) / 2.0;
    const double ey = (std::abs(s) * box.length + std::abs(c) * box.width) / 2.0;
    int col_lo = static_cast<int>(std::floor((box.center.x() - ex + half) / spec.resolution - 0.5));
    int col_hi = static_cast<int>(std::ceil((box.center.x() + ex + half) / spec.resolution - 0.5));
    int row_lo = static_cast<int>(std::floor((box.center.y() - ey + half) / spec.resolution - 0.5));
    int row_hi = static_cast<int>(std::ceil((box.center.y() + ey + half) / spec.resolution - 0.5));
    col_lo = std::max(col_lo, 0);
    row_lo = std::max(row_lo, 0);
    col_hi = std::min(col_hi, n - 1);
    row_hi = std::min(row_hi, n - 1);
    for (int row = row_lo; row <= row_hi; ++row) {
      double y = spec.cell_center_y(row);
      for (int col = col_lo; col <= col_hi; ++col) {
        if (point_in_box_footprint(spec.cell_center_x(col), y, box, c, s))
          grid.at(0, row, col) = 1;
      }
    }
  }
  return grid;
}

}  // namespace beval
