#include "beval/grid_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "beval/png_io.hpp"

static_assert(std::endian::native == std::endian::little,
              "grid container I/O assumes a little-endian host");

namespace beval {

namespace {
constexpr char kMagic[4] = {'B', 'E', 'V', 'G'};
}

void save_grid(const SemanticGrid& grid, const std::filesystem::path& path) {
  grid.validate();
  if (grid.kind != GridKind::Binary)
    throw ValidationError("save_grid: only binary grids can be bit-packed");
  if (grid.spec.cells_per_side > 0xFFFF || grid.classes.size() > 0xFF)
    throw ValidationError("save_grid: grid too large for the container header");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write grid file: " + path.string());
  out.write(kMagic, 4);
  uint16_t side = static_cast<uint16_t>(grid.spec.cells_per_side);
  uint8_t nclasses = static_cast<uint8_t>(grid.classes.size());
  out.write(reinterpret_cast<const char*>(&side), 2);
  out.write(reinterpret_cast<const char*>(&nclasses), 1);
  for (ClassLabel c : grid.classes) {
    const std::string& name = class_name(c);
    uint8_t len = static_cast<uint8_t>(name.size());
    out.write(reinterpret_cast<const char*>(&len), 1);
    out.write(name.data(), len);
  }
  const size_t plane = grid.plane_size();
  std::vector<uint8_t> packed((plane + 7) / 8);
  for (size_t p = 0; p < grid.classes.size(); ++p) {
    std::fill(packed.begin(), packed.end(), 0);
    const uint8_t* src = grid.bits.data() + p * plane;
    for (size_t i = 0; i < plane; ++i)
      if (src[i]) packed[i >> 3] |= uint8_t(1u << (i & 7));
    out.write(reinterpret_cast<const char*>(packed.data()), packed.size());
  }
  if (!out) throw IoError("write failed: " + path.string());
}

SemanticGrid load_grid(const std::filesystem::path& path, double extent) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open grid file: " + path.string());
  char magic[4];
  uint16_t side = 0;
  uint8_t nclasses = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&side), 2);
  in.read(reinterpret_cast<char*>(&nclasses), 1);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw ValidationError("not a BEVG grid file: " + path.string());
  if (side == 0) throw ValidationError("grid file with zero side: " + path.string());

  std::vector<ClassLabel> classes;
  for (int c = 0; c < nclasses; ++c) {
    uint8_t len = 0;
    in.read(reinterpret_cast<char*>(&len), 1);
    std::string name(len, '\0');
    in.read(name.data(), len);
    if (!in) throw IoError("truncated grid file: " + path.string());
    classes.push_back(class_from_name(name));
  }

  SemanticGrid grid = SemanticGrid::binary(GridSpec::make(extent, extent / side), classes);
  const size_t plane = grid.plane_size();
  std::vector<uint8_t> packed((plane + 7) / 8);
  for (size_t p = 0; p < classes.size(); ++p) {
    in.read(reinterpret_cast<char*>(packed.data()), packed.size());
    if (!in) throw IoError("truncated grid file: " + path.string());
    uint8_t* dst = grid.bits.data() + p * plane;
    for (size_t i = 0; i < plane; ++i) dst[i] = (packed[i >> 3] >> (i & 7)) & 1u;
  }
  return grid;
}

void save_grid_pngs(const SemanticGrid& grid, const std::filesystem::path& dir,
                    const std::string& stem) {
  grid.validate();
  if (grid.kind != GridKind::Binary)
    throw ValidationError("save_grid_pngs: only binary grids are supported");
  const int side = grid.spec.cells_per_side;
  for (size_t p = 0; p < grid.classes.size(); ++p) {
    ImageU8 img = ImageU8::make(side, side, 1);
    for (int row = 0; row < side; ++row)
      for (int col = 0; col < side; ++col)
        img.at(row, col, 0) = grid.at(p, row, col) ? 255 : 0;
    save_png(img, dir / (stem + "_" + class_name(grid.classes[p]) + ".png"));
  }
}

SemanticGrid load_grid_from_pngs(const std::filesystem::path& dir, const std::string& stem,
                                 const std::vector<ClassLabel>& classes, double extent) {
  SemanticGrid grid;
  bool first = true;
  for (size_t p = 0; p < classes.size(); ++p) {
    ImageU8 img = load_png(dir / (stem + "_" + class_name(classes[p]) + ".png"));
    if (img.width != img.height)
      throw ValidationError("grid PNG must be square: " + stem);
    if (first) {
      grid = SemanticGrid::binary(GridSpec::make(extent, extent / img.width), classes);
      first = false;
    } else if (img.width != grid.spec.cells_per_side) {
      throw ValidationError("grid PNG planes disagree on size: " + stem);
    }
    for (int row = 0; row < img.height; ++row)
      for (int col = 0; col < img.width; ++col)
        grid.at(p, row, col) = img.at(row, col, 0) >= 128 ? 1 : 0;
  }
  return grid;
}

}  // namespace beval
