#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "beval/error.hpp"
#include "beval/geometry.hpp"

namespace beval {

enum class Frame : uint8_t { Sensor, Ego };

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double intensity = 0.0;  // reflectance in [0,1]; carried, never interpreted

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

inline bool operator==(const Point3& a, const Point3& b) {
  return a.x == b.x && a.y == b.y && a.z == b.z && a.intensity == b.intensity;
}

struct PointCloud {
  std::vector<Point3> points;
  Frame frame = Frame::Sensor;

  size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

// Applies p -> R*p + t to every point. Intensity is carried through.
// Throws ValidationError if the pose rotation is not proper orthonormal.
PointCloud transform_cloud(const PointCloud& cloud, const Pose& pose,
                           Frame target_frame = Frame::Ego);

enum class ClassLabel : uint8_t { Vehicle = 0, Human = 1, DrivableArea = 2 };

// Canonical names used in files (BEVG class table, manifests, reports).
const std::string& class_name(ClassLabel c);
// Accepts canonical names plus the "drivable" CLI alias. Throws ValidationError.
ClassLabel class_from_name(const std::string& name);

struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  void validate() const {
    if (!(fx > 0.0) || !(fy > 0.0))
      throw ValidationError("intrinsics: focal lengths must be positive");
    if (cx < 0.0 || cx > width || cy < 0.0 || cy > height)
      throw ValidationError("intrinsics: principal point outside image");
  }

  // Pinhole projection of a camera-frame point (z forward) to pixels.
  Eigen::Vector2d project(const Eigen::Vector3d& p_cam) const {
    return {fx * p_cam.x() / p_cam.z() + cx, fy * p_cam.y() / p_cam.z() + cy};
  }
};

// Oriented 3D box in the ego frame. Only the BEV footprint (center.xy,
// length x width, yaw about +z) matters for rasterization.
struct BoxAnnotation {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double length = 0.0;  // extent along the box x axis
  double width = 0.0;   // extent along the box y axis
  double height = 0.0;
  double yaw = 0.0;     // radians, in [-pi, pi)
  ClassLabel label = ClassLabel::Vehicle;

  void validate() const {
    if (!(length > 0.0 && width > 0.0 && height > 0.0))
      throw ValidationError("box: size components must be positive");
    if (!(yaw >= -M_PI && yaw < M_PI))
      throw ValidationError("box: yaw out of [-pi, pi)");
  }
};

}  // namespace beval
