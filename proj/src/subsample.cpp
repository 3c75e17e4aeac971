#include "beval/subsample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "beval/spherical.hpp"

namespace beval {

namespace {

struct Candidate {
  double dtheta;
  double dphi;
  double rho;
  uint32_t index;
};

bool better(const Candidate& a, const Candidate& b, const PointCloud& cloud) {
  if (a.dtheta != b.dtheta) return a.dtheta < b.dtheta;
  if (a.dphi != b.dphi) return a.dphi < b.dphi;
  if (a.rho != b.rho) return a.rho < b.rho;
  const Point3& pa = cloud.points[a.index];
  const Point3& pb = cloud.points[b.index];
  if (pa.x != pb.x) return pa.x < pb.x;
  if (pa.y != pb.y) return pa.y < pb.y;
  if (pa.z != pb.z) return pa.z < pb.z;
  return pa.intensity < pb.intensity;
}

inline int bin_index(double value, double lo, double width, int n) {
  int idx = static_cast<int>(std::floor((value - lo) / width));
  if (idx < 0) idx = 0;          // Fixed-mode clamp / fp guard
  if (idx >= n) idx = n - 1;     // final bin closed
  return idx;
}

}  // namespace

std::pair<double, double> observed_theta_range(const PointCloud& cloud) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const Point3& p : cloud.points) {
    double theta = to_spherical(p).theta;
    lo = std::min(lo, theta);
    hi = std::max(hi, theta);
  }
  return {lo, hi};
}

PointCloud subsample(const PointCloud& cloud, const SectorGridSpec& spec) {
  spec.validate();
  PointCloud out;
  out.frame = cloud.frame;
  if (cloud.empty()) return out;

  double theta_lo, theta_hi;
  if (spec.theta_mode == SectorGridSpec::ThetaRange::Fixed) {
    theta_lo = spec.theta_min;
    theta_hi = spec.theta_max;
  } else {
    std::tie(theta_lo, theta_hi) = observed_theta_range(cloud);
  }
  // Degenerate observed range (all points at one elevation): a single bin.
  double theta_span = theta_hi - theta_lo;
  double theta_width = theta_span > 0.0 ? theta_span / spec.theta_sectors
                                        : std::numeric_limits<double>::infinity();
  const double phi_lo = -M_PI;
  const double phi_width = 2.0 * M_PI / spec.phi_sectors;

  const int64_t n_sectors =
      static_cast<int64_t>(spec.theta_sectors) * spec.phi_sectors;
  // Dense winner table for realistic sector counts, hash map beyond that.
  const bool dense = n_sectors <= (int64_t{1} << 22);
  std::vector<int64_t> dense_best;
  std::unordered_map<int64_t, size_t> sparse_best;
  if (dense) dense_best.assign(n_sectors, -1);

  std::vector<Candidate> cands(cloud.points.size());
  for (uint32_t i = 0; i < cloud.points.size(); ++i) {
    SphericalPoint s = to_spherical(cloud.points[i]);
    int ti = theta_span > 0.0
                 ? bin_index(s.theta, theta_lo, theta_width, spec.theta_sectors)
                 : 0;
    int pi = bin_index(s.phi, phi_lo, phi_width, spec.phi_sectors);
    double theta_center = theta_lo + (ti + 0.5) * (theta_span > 0.0 ? theta_width : 0.0);
    double phi_center = phi_lo + (pi + 0.5) * phi_width;
    cands[i] = {std::abs(s.theta - theta_center), std::abs(s.phi - phi_center),
                s.rho, i};
    int64_t sector = static_cast<int64_t>(ti) * spec.phi_sectors + pi;
    if (dense) {
      int64_t& best = dense_best[sector];
      if (best < 0 || better(cands[i], cands[best], cloud)) best = i;
    } else {
      auto [it, inserted] = sparse_best.try_emplace(sector, i);
      if (!inserted && better(cands[i], cands[it->second], cloud)) it->second = i;
    }
  }

  if (dense) {
    for (int64_t s = 0; s < n_sectors; ++s)
      if (dense_best[s] >= 0) out.points.push_back(cloud.points[dense_best[s]]);
  } else {
    std::vector<std::pair<int64_t, size_t>> winners(sparse_best.begin(), sparse_best.end());
    std::sort(winners.begin(), winners.end());
    for (const auto& [sector, idx] : winners) out.points.push_back(cloud.points[idx]);
  }
  return out;
}

}  // namespace beval
