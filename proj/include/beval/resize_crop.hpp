#pragma once

#include <array>
#include <filesystem>

#include "beval/image.hpp"
#include "beval/types.hpp"

namespace beval {

// Aspect-preserving scale followed by a center crop to the target size.
// The scale is the exact rational max(target_w/src_w, target_h/src_h), so
// the dominating scaled dimension equals the target exactly and the other
// one is >= its target; the crop window always lies inside the scaled image.
struct ResizeCropPlan {
  int src_width = 0;
  int src_height = 0;
  int target_width = 0;
  int target_height = 0;
  long long scale_num = 1;  // scale = scale_num / scale_den, exact
  long long scale_den = 1;
  double scale = 1.0;
  int scaled_width = 0;   // floor(src * scale), exact rational floor
  int scaled_height = 0;
  int crop_x = 0;         // top-left of the crop inside the scaled image
  int crop_y = 0;
};

// target defaults to the 352x128 (width x height) network input size.
ResizeCropPlan plan_resize_crop(int src_width, int src_height,
                                int target_width = 352, int target_height = 128);

// Bilinear resize (half-pixel centers) to the plan's scaled size, then crop.
// An identity plan returns a bit-identical image.
ImageU8 apply_resize_crop(const ImageU8& img, const ResizeCropPlan& plan);

// fx' = fx*s, fy' = fy*s, cx' = cx*s - crop_x, cy' = cy*s - crop_y.
// Projecting with the result equals projecting with the original intrinsics
// and then applying the plan's pixel map.
Intrinsics adjust_intrinsics(const Intrinsics& k, const ResizeCropPlan& plan);

// Maps a source-image pixel position through resize + crop.
inline std::array<double, 2> map_pixel(const ResizeCropPlan& plan, double u, double v) {
  return {u * plan.scale - plan.crop_x, v * plan.scale - plan.crop_y};
}

struct NormalizationParams {
  std::array<double, 3> mean{};
  std::array<double, 3> stddev{};

  void validate() const {
    for (double s : stddev)
      if (!(s > 0.0)) throw ValidationError("normalization: std components must be positive");
  }
};

// Loads {"mean": [...], "std": [...]} from a JSON config file. The repo ships
// the conventional ImageNet constants in config/normalization.json.
NormalizationParams load_normalization(const std::filesystem::path& path);

// Per channel (value - mean) / std on a 3-channel float image in [0,1].
ImageF normalize(const ImageF& img, const NormalizationParams& params);
ImageF denormalize(const ImageF& img, const NormalizationParams& params);

}  // namespace beval
