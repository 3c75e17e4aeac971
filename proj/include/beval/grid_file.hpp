#pragma once

#include <filesystem>

#include "beval/grid.hpp"

namespace beval {

// Multi-class binary grid container, little-endian:
//   magic "BEVG", u16 side, u8 class count,
//   class name table (u8 length + ASCII name per class),
//   one bit-packed plane per class: ceil(side*side/8) bytes, cells in
//   row-major order, least-significant bit first within each byte.
// The container carries no metric metadata; the loader attaches the grid
// extent from context (default 100 m).
void save_grid(const SemanticGrid& grid, const std::filesystem::path& path);
SemanticGrid load_grid(const std::filesystem::path& path, double extent = 100.0);

// One gray PNG per class, cells mapped 0 -> 0 and 1 -> 255, named
// <stem>_<class>.png.
void save_grid_pngs(const SemanticGrid& grid, const std::filesystem::path& dir,
                    const std::string& stem);

// PNG plane: pixel value >= 128 reads as 1.
SemanticGrid load_grid_from_pngs(const std::filesystem::path& dir, const std::string& stem,
                                 const std::vector<ClassLabel>& classes, double extent = 100.0);

}  // namespace beval
