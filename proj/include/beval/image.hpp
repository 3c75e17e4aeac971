#pragma once

#include <cstdint>
#include <vector>

#include "beval/error.hpp"

namespace beval {

// Row-major interleaved 8-bit image, 1 (gray) or 3 (RGB) channels.
struct ImageU8 {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<uint8_t> data;

  static ImageU8 make(int w, int h, int c, uint8_t fill = 0) {
    ImageU8 img{w, h, c, {}};
    img.data.assign(static_cast<size_t>(w) * h * c, fill);
    return img;
  }

  uint8_t& at(int y, int x, int c) {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  uint8_t at(int y, int x, int c) const {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }

  void validate() const {
    if (data.size() != static_cast<size_t>(width) * height * channels)
      throw ValidationError("image: data length does not match dimensions");
  }
};

// Float image; camera tensors are scaled to [0,1] before normalization.
struct ImageF {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> data;

  static ImageF make(int w, int h, int c, float fill = 0.0f) {
    ImageF img{w, h, c, {}};
    img.data.assign(static_cast<size_t>(w) * h * c, fill);
    return img;
  }

  float& at(int y, int x, int c) {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  float at(int y, int x, int c) const {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
};

ImageF to_float(const ImageU8& img);   // value / 255
ImageU8 to_u8(const ImageF& img);      // clamp to [0,1], round to nearest

}  // namespace beval
