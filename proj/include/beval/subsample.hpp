#pragma once

#include <utility>

#include "beval/error.hpp"
#include "beval/types.hpp"

namespace beval {

// Sector layout for spherical subsampling. Elevation (theta) is split into
// theta_sectors bins, azimuth (phi) into phi_sectors bins over [-pi, pi).
// The theta bins span either the per-cloud observed [min, max] elevation
// (Observed, the default) or a caller-supplied fixed range (Fixed). Bins are
// half-open [lo, hi) with the final bin closed, so every point lands in
// exactly one sector; in Fixed mode points outside the range are clamped to
// the first/last bin.
struct SectorGridSpec {
  enum class ThetaRange : uint8_t { Observed, Fixed };

  int theta_sectors = 32;
  int phi_sectors = 1500;
  ThetaRange theta_mode = ThetaRange::Observed;
  double theta_min = 0.0;  // Fixed mode only
  double theta_max = 0.0;

  void validate() const {
    if (theta_sectors < 1 || phi_sectors < 1)
      throw ValidationError("sector spec: sector counts must be >= 1");
    if (theta_mode == ThetaRange::Fixed && !(theta_min < theta_max))
      throw ValidationError("sector spec: fixed theta range must have min < max");
  }
};

// Keeps at most one point per non-empty (theta, phi) sector. The kept point
// is the one closest to the sector center: smallest |theta - center_theta|,
// ties broken by |phi - center_phi|, then by rho, then lexicographically by
// (x, y, z, intensity). The rule is a total order, so the result does not
// depend on input point order. Output points are emitted in
// (theta sector, phi sector) order. Empty input yields empty output.
PointCloud subsample(const PointCloud& cloud, const SectorGridSpec& spec);

// Observed elevation range of a cloud, as used by ThetaRange::Observed.
std::pair<double, double> observed_theta_range(const PointCloud& cloud);

}  // namespace beval
