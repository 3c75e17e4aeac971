#include "beval/image.hpp"

#include <cmath>

namespace beval {

ImageF to_float(const ImageU8& img) {
  ImageF out{img.width, img.height, img.channels, {}};
  out.data.resize(img.data.size());
  for (size_t i = 0; i < img.data.size(); ++i) out.data[i] = img.data[i] / 255.0f;
  return out;
}

ImageU8 to_u8(const ImageF& img) {
  ImageU8 out{img.width, img.height, img.channels, {}};
  out.data.resize(img.data.size());
  for (size_t i = 0; i < img.data.size(); ++i) {
    float v = img.data[i];
    v = v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v);
    out.data[i] = static_cast<uint8_t>(std::lround(v * 255.0f));
  }
  return out;
}

}  // namespace beval
