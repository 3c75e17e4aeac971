#pragma once

#include <cstdint>
#include <vector>

#include "beval/error.hpp"

namespace beval {

// Binary mask, row-major, values 0/1.
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> data;

  static Mask make(int w, int h, uint8_t fill = 0) {
    Mask m{w, h, {}};
    m.data.assign(static_cast<size_t>(w) * h, fill);
    return m;
  }

  uint8_t& at(int y, int x) { return data[static_cast<size_t>(y) * width + x]; }
  uint8_t at(int y, int x) const { return data[static_cast<size_t>(y) * width + x]; }
};

// All-ones rectangular kernel with odd dimensions.
struct StructuringElement {
  int width = 5;
  int height = 5;

  void validate() const {
    if (width < 1 || height < 1 || width % 2 == 0 || height % 2 == 0)
      throw ValidationError("structuring element: dimensions must be odd and positive");
  }
};

// Dilation followed by erosion. The mask is taken to be background outside
// its bounds; the dilation is evaluated on a domain padded by the kernel
// radius so the composition is exactly plane closing restricted to the mask
// window. That makes the operation extensive, idempotent and monotone.
Mask close(const Mask& mask, const StructuringElement& se);

}  // namespace beval
