#pragma once

#include <cmath>

#include "beval/types.hpp"

namespace beval {

// rho >= 0; theta = elevation in [-pi/2, pi/2]; phi = azimuth in [-pi, pi).
// The origin maps to (0, 0, 0).
struct SphericalPoint {
  double rho = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

inline SphericalPoint to_spherical(const Point3& p) {
  double planar = std::hypot(p.x, p.y);
  double rho = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  if (rho == 0.0) return {0.0, 0.0, 0.0};
  double theta = std::atan2(p.z, planar);
  double phi = std::atan2(p.y, p.x);
  if (phi == M_PI) phi = -M_PI;  // atan2 yields (-pi, pi]; fold the seam
  return {rho, theta, phi};
}

inline Point3 to_cartesian(const SphericalPoint& s, double intensity = 0.0) {
  double c = std::cos(s.theta);
  return {s.rho * c * std::cos(s.phi), s.rho * c * std::sin(s.phi),
          s.rho * std::sin(s.theta), intensity};
}

}  // namespace beval
