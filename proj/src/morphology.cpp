#include "beval/morphology.hpp"

namespace beval {

namespace {

// Inclusive prefix sums with a zero guard row/column; sums[(y+1)*w1 + x+1]
// holds the sum over [0,y] x [0,x].
std::vector<int32_t> integral(const uint8_t* data, int width, int height) {
  std::vector<int32_t> sums(static_cast<size_t>(width + 1) * (height + 1), 0);
  for (int y = 0; y < height; ++y) {
    int32_t row = 0;
    const uint8_t* src = data + static_cast<size_t>(y) * width;
    int32_t* cur = sums.data() + static_cast<size_t>(y + 1) * (width + 1);
    const int32_t* prev = sums.data() + static_cast<size_t>(y) * (width + 1);
    for (int x = 0; x < width; ++x) {
      row += src[x];
      cur[x + 1] = prev[x + 1] + row;
    }
  }
  return sums;
}

inline int32_t window_sum(const std::vector<int32_t>& sums, int width, int x0, int y0,
                          int x1, int y1) {  // inclusive corners
  const int w1 = width + 1;
  return sums[static_cast<size_t>(y1 + 1) * w1 + (x1 + 1)] -
         sums[static_cast<size_t>(y0) * w1 + (x1 + 1)] -
         sums[static_cast<size_t>(y1 + 1) * w1 + x0] +
         sums[static_cast<size_t>(y0) * w1 + x0];
}

}  // namespace

Mask close(const Mask& mask, const StructuringElement& se) {
  se.validate();
  if (mask.data.size() != static_cast<size_t>(mask.width) * mask.height)
    throw ValidationError("close: mask data length does not match dimensions");
  if (mask.width == 0 || mask.height == 0) return mask;

  const int rx = (se.width - 1) / 2;
  const int ry = (se.height - 1) / 2;
  const int pw = mask.width + 2 * rx;
  const int ph = mask.height + 2 * ry;

  // Dilation onto the padded domain: padded pixel (px, py) sits at mask
  // coords (px - rx, py - ry); it is set iff its kernel window intersects
  // the mask support.
  auto mask_sums = integral(mask.data.data(), mask.width, mask.height);
  Mask dilated = Mask::make(pw, ph);
  for (int py = 0; py < ph; ++py) {
    int y0 = py - 2 * ry, y1 = py;  // window in mask coords, pre-clip
    if (y0 < 0) y0 = 0;
    if (y1 > mask.height - 1) y1 = mask.height - 1;
    if (y0 > y1) continue;
    for (int px = 0; px < pw; ++px) {
      int x0 = px - 2 * rx, x1 = px;
      if (x0 < 0) x0 = 0;
      if (x1 > mask.width - 1) x1 = mask.width - 1;
      if (x0 > x1) continue;
      if (window_sum(mask_sums, mask.width, x0, y0, x1, y1) > 0) dilated.at(py, px) = 1;
    }
  }

  // Erosion back onto the mask domain: mask pixel (x, y) needs its full
  // kernel window set in the dilation, i.e. padded window [x, x+2rx] x
  // [y, y+2ry], which always lies inside the padded domain.
  auto dil_sums = integral(dilated.data.data(), pw, ph);
  const int32_t full = se.width * se.height;
  Mask out = Mask::make(mask.width, mask.height);
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x)
      if (window_sum(dil_sums, pw, x, y, x + 2 * rx, y + 2 * ry) == full) out.at(y, x) = 1;
  return out;
}

}  // namespace beval
