#pragma once

#include <cstdint>
#include <vector>

#include "beval/error.hpp"
#include "beval/types.hpp"

namespace beval {

// Square BEV window centered on the ego vehicle. Cell (row, col) covers
//   x in [col*res - extent/2, (col+1)*res - extent/2)   (col axis = ego x)
//   y in [row*res - extent/2, (row+1)*res - extent/2)   (row axis = ego y)
// so the cell center is ((col+0.5)*res - extent/2, (row+0.5)*res - extent/2).
struct GridSpec {
  double extent = 100.0;     // meters per side
  double resolution = 0.5;   // meters per cell
  int cells_per_side = 200;

  static GridSpec make(double extent, double resolution) {
    double cells = extent / resolution;
    double rounded = std::round(cells);
    if (!(resolution > 0.0) || std::abs(cells - rounded) > 1e-9 || rounded < 1.0)
      throw ValidationError("grid spec: extent must be an exact multiple of resolution");
    return {extent, resolution, static_cast<int>(rounded)};
  }

  double cell_center_x(int col) const { return (col + 0.5) * resolution - extent / 2.0; }
  double cell_center_y(int row) const { return (row + 0.5) * resolution - extent / 2.0; }

  bool operator==(const GridSpec& o) const {
    return extent == o.extent && resolution == o.resolution && cells_per_side == o.cells_per_side;
  }
};

enum class GridKind : uint8_t { Binary, Probability };

// H x W x C BEV raster. Binary grids store 0/1 bytes, probability grids store
// float values in [0,1]; exactly one of the two buffers is populated.
struct SemanticGrid {
  GridSpec spec;
  std::vector<ClassLabel> classes;
  GridKind kind = GridKind::Binary;
  std::vector<uint8_t> bits;    // kind == Binary
  std::vector<float> probs;     // kind == Probability

  static SemanticGrid binary(const GridSpec& spec, std::vector<ClassLabel> classes) {
    SemanticGrid g;
    g.spec = spec;
    g.classes = std::move(classes);
    g.kind = GridKind::Binary;
    g.bits.assign(g.plane_size() * g.classes.size(), 0);
    return g;
  }

  static SemanticGrid probability(const GridSpec& spec, std::vector<ClassLabel> classes) {
    SemanticGrid g;
    g.spec = spec;
    g.classes = std::move(classes);
    g.kind = GridKind::Probability;
    g.probs.assign(g.plane_size() * g.classes.size(), 0.0f);
    return g;
  }

  size_t plane_size() const {
    return static_cast<size_t>(spec.cells_per_side) * spec.cells_per_side;
  }

  size_t index(size_t plane, int row, int col) const {
    return plane * plane_size() + static_cast<size_t>(row) * spec.cells_per_side + col;
  }

  uint8_t& at(size_t plane, int row, int col) { return bits[index(plane, row, col)]; }
  uint8_t at(size_t plane, int row, int col) const { return bits[index(plane, row, col)]; }

  // Index of the plane holding `label`; throws if the grid lacks that class.
  size_t plane_of(ClassLabel label) const {
    for (size_t i = 0; i < classes.size(); ++i)
      if (classes[i] == label) return i;
    throw ValidationError("grid: class " + class_name(label) + " not present");
  }

  void validate() const;
};

}  // namespace beval
