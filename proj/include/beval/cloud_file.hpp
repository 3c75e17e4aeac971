#pragma once

#include <filesystem>

#include "beval/types.hpp"

namespace beval {

// Point cloud container: little-endian, magic "BEVL", u32 version, u64 count,
// then count * 4 float32 (x, y, z, intensity).
inline constexpr uint32_t kCloudFileVersion = 1;

PointCloud load_cloud(const std::filesystem::path& path, Frame frame = Frame::Sensor);
void save_cloud(const PointCloud& cloud, const std::filesystem::path& path);

}  // namespace beval
