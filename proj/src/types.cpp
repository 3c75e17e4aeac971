#include "beval/types.hpp"

#include <array>

namespace beval {

PointCloud transform_cloud(const PointCloud& cloud, const Pose& pose, Frame target_frame) {
  if (!pose.is_valid())
    throw ValidationError("transform_cloud: pose rotation is not proper orthonormal");
  PointCloud out;
  out.frame = target_frame;
  out.points.reserve(cloud.points.size());
  const Eigen::Matrix3d& r = pose.rotation();
  const Eigen::Vector3d& t = pose.translation();
  for (const Point3& p : cloud.points) {
    Eigen::Vector3d q = r * Eigen::Vector3d(p.x, p.y, p.z) + t;
    out.points.push_back({q.x(), q.y(), q.z(), p.intensity});
  }
  return out;
}

const std::string& class_name(ClassLabel c) {
  static const std::array<std::string, 3> names = {"vehicle", "human", "drivable_area"};
  return names[static_cast<size_t>(c)];
}

ClassLabel class_from_name(const std::string& name) {
  if (name == "vehicle") return ClassLabel::Vehicle;
  if (name == "human") return ClassLabel::Human;
  if (name == "drivable_area" || name == "drivable") return ClassLabel::DrivableArea;
  throw ValidationError("unknown class label: " + name);
}

}  // namespace beval
