#include "beval/cloud_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "beval/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "cloud container I/O assumes a little-endian host");

namespace beval {

namespace {
constexpr char kMagic[4] = {'B', 'E', 'V', 'L'};
}

PointCloud load_cloud(const std::filesystem::path& path, Frame frame) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open cloud file: " + path.string());

  char magic[4];
  uint32_t version = 0;
  uint64_t count = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&count), 8);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw ValidationError("not a BEVL cloud file: " + path.string());
  if (version != kCloudFileVersion)
    throw ValidationError("unsupported BEVL version in " + path.string());

  PointCloud cloud;
  cloud.frame = frame;
  cloud.points.reserve(count);
  std::vector<float> buf(4);
  for (uint64_t i = 0; i < count; ++i) {
    in.read(reinterpret_cast<char*>(buf.data()), 16);
    if (!in) throw IoError("truncated cloud file: " + path.string());
    Point3 p{buf[0], buf[1], buf[2], buf[3]};
    if (!p.finite())
      throw ValidationError("non-finite point in cloud file: " + path.string());
    cloud.points.push_back(p);
  }
  return cloud;
}

void save_cloud(const PointCloud& cloud, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write cloud file: " + path.string());
  out.write(kMagic, 4);
  uint32_t version = kCloudFileVersion;
  uint64_t count = cloud.points.size();
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&count), 8);
  for (const Point3& p : cloud.points) {
    float buf[4] = {static_cast<float>(p.x), static_cast<float>(p.y),
                    static_cast<float>(p.z), static_cast<float>(p.intensity)};
    out.write(reinterpret_cast<const char*>(buf), 16);
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace beval
