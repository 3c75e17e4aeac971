#include "beval/resize_crop.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

namespace beval {

ResizeCropPlan plan_resize_crop(int src_width, int src_height,
                                int target_width, int target_height) {
  if (src_width <= 0 || src_height <= 0 || target_width <= 0 || target_height <= 0)
    throw ValidationError("plan_resize_crop: dimensions must be positive");

  ResizeCropPlan plan;
  plan.src_width = src_width;
  plan.src_height = src_height;
  plan.target_width = target_width;
  plan.target_height = target_height;

  // max(target_w/src_w, target_h/src_h) compared in integers.
  long long wn = target_width, wd = src_width;
  long long hn = target_height, hd = src_height;
  if (wn * hd >= hn * wd) {
    plan.scale_num = wn;
    plan.scale_den = wd;
  } else {
    plan.scale_num = hn;
    plan.scale_den = hd;
  }
  plan.scale = static_cast<double>(plan.scale_num) / static_cast<double>(plan.scale_den);
  plan.scaled_width = static_cast<int>(src_width * plan.scale_num / plan.scale_den);
  plan.scaled_height = static_cast<int>(src_height * plan.scale_num / plan.scale_den);
  plan.crop_x = (plan.scaled_width - target_width) / 2;
  plan.crop_y = (plan.scaled_height - target_height) / 2;
  return plan;
}

ImageU8 apply_resize_crop(const ImageU8& img, const ResizeCropPlan& plan) {
  img.validate();
  if (img.width != plan.src_width || img.height != plan.src_height)
    throw ValidationError("apply_resize_crop: image dimensions do not match the plan");

  const bool identity = plan.scaled_width == img.width && plan.scaled_height == img.height &&
                        plan.crop_x == 0 && plan.crop_y == 0;
  if (identity) return img;

  ImageU8 out = ImageU8::make(plan.target_width, plan.target_height, img.channels);
  const double x_ratio = static_cast<double>(img.width) / plan.scaled_width;
  const double y_ratio = static_cast<double>(img.height) / plan.scaled_height;
  for (int oy = 0; oy < plan.target_height; ++oy) {
    double sy = (oy + plan.crop_y + 0.5) * y_ratio - 0.5;
    if (sy < 0.0) sy = 0.0;
    int y0 = static_cast<int>(sy);
    if (y0 > img.height - 1) y0 = img.height - 1;
    int y1 = std::min(y0 + 1, img.height - 1);
    double fy = sy - y0;
    for (int ox = 0; ox < plan.target_width; ++ox) {
      double sx = (ox + plan.crop_x + 0.5) * x_ratio - 0.5;
      if (sx < 0.0) sx = 0.0;
      int x0 = static_cast<int>(sx);
      if (x0 > img.width - 1) x0 = img.width - 1;
      int x1 = std::min(x0 + 1, img.width - 1);
      double fx = sx - x0;
      for (int c = 0; c < img.channels; ++c) {
        double top = img.at(y0, x0, c) * (1.0 - fx) + img.at(y0, x1, c) * fx;
        double bot = img.at(y1, x0, c) * (1.0 - fx) + img.at(y1, x1, c) * fx;
        double v = top * (1.0 - fy) + bot * fy;
        out.at(oy, ox, c) = static_cast<uint8_t>(std::lround(v));
      }
    }
  }
  return out;
}

Intrinsics adjust_intrinsics(const Intrinsics& k, const ResizeCropPlan& plan) {
  if (k.width != plan.src_width || k.height != plan.src_height)
    throw ValidationError("adjust_intrinsics: intrinsics do not match the plan source size");
  Intrinsics out;
  out.fx = k.fx * plan.scale;
  out.fy = k.fy * plan.scale;
  out.cx = k.cx * plan.scale - plan.crop_x;
  out.cy = k.cy * plan.scale - plan.crop_y;
  out.width = plan.target_width;
  out.height = plan.target_height;
  return out;
}

NormalizationParams load_normalization(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open normalization config: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("normalization config parse error: " + std::string(e.what()));
  }
  NormalizationParams p;
  try {
    for (int c = 0; c < 3; ++c) {
      p.mean[c] = j.at("mean").at(c).get<double>();
      p.stddev[c] = j.at("std").at(c).get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("normalization config schema error: " + std::string(e.what()));
  }
  p.validate();
  return p;
}

ImageF normalize(const ImageF& img, const NormalizationParams& params) {
  params.validate();
  if (img.channels != 3) throw ValidationError("normalize: expected a 3-channel image");
  ImageF out = img;
  size_t pixels = static_cast<size_t>(img.width) * img.height;
  for (size_t i = 0; i < pixels; ++i)
    for (int c = 0; c < 3; ++c)
      out.data[i * 3 + c] =
          static_cast<float>((img.data[i * 3 + c] - params.mean[c]) / params.stddev[c]);
  return out;
}

ImageF denormalize(const ImageF& img, const NormalizationParams& params) {
  params.validate();
  if (img.channels != 3) throw ValidationError("denormalize: expected a 3-channel image");
  ImageF out = img;
  size_t pixels = static_cast<size_t>(img.width) * img.height;
  for (size_t i = 0; i < pixels; ++i)
    for (int c = 0; c < 3; ++c)
      out.data[i * 3 + c] =
          static_cast<float>(img.data[i * 3 + c] * params.stddev[c] + params.mean[c]);
  return out;
}

}  // namespace beval
