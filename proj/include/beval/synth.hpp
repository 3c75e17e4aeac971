#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "beval/grid.hpp"
#include "beval/manifest.hpp"
#include "beval/raster_map.hpp"
#include "beval/vector_map.hpp"

namespace beval {

// Desk-scale synthetic dataset generator. Scenes are built from a flat
// ground plane, a handful of oriented boxes, and a fixed drivable-area
// layout; LiDAR clouds come from ray-casting a layers x azimuth-steps
// pattern against that scene. Everything derives from SplitMix64 streams
// (per-sample stream: seed XOR sample index), so output is byte-identical
// across runs and platforms.

enum class ImageGeometry : uint8_t { W1600x900, W1920x1080, W1124x1024 };
enum class MapKind : uint8_t { Vector, Raster };
enum class DrivableLayout : uint8_t { Cross, Ring, Grid };

struct SynthConfig {
  std::uint64_t seed = 7;
  int n_samples = 1;
  int lidar_layers = 32;
  int azimuth_steps = 1500;
  ImageGeometry image_geometry = ImageGeometry::W1600x900;
  MapKind map_kind = MapKind::Vector;
  DrivableLayout drivable_layout = DrivableLayout::Cross;
  int n_boxes_min = 4;
  int n_boxes_max = 10;
  int n_cameras = 6;
  std::string dataset_id = "synth";
  double lidar_height = 1.8;          // sensor above ground, meters
  double elevation_min_deg = -30.0;   // lowest LiDAR layer
  double elevation_max_deg = -1.25;   // highest layer; still below horizon

  void validate() const;

  // "nuscenes-like": 32 layers x 1500 azimuths, 1600x900 cameras, vector map.
  // "wovenplanet-like": 64 layers x 2200 azimuths, 1124x1024 cameras, raster map.
  static SynthConfig profile(const std::string& name);
};

// The generator's own record of one scene, kept so tests can compute ground
// truth analytically without going through the grid pipeline.
struct SynthScene {
  std::string sample_id;
  std::vector<BoxAnnotation> boxes;  // ego frame
  Pose ego_to_map;
  DrivableLayout layout = DrivableLayout::Cross;
};

struct SynthResult {
  DatasetManifest manifest;
  std::filesystem::path manifest_path;
  std::vector<SynthScene> scenes;
};

SynthResult generate(const SynthConfig& config, const std::filesystem::path& out_dir);

// Analytic ground truth straight from the scene description (point-in-
// rectangle per box, closed-form layout membership per cell center). The
// grid pipeline must reproduce it cell-for-cell on generated data.
SemanticGrid synth_ground_truth(const SynthScene& scene, const GridSpec& spec,
                                const std::vector<ClassLabel>& classes);

// Closed-form drivable membership of a map-frame point.
bool layout_contains(DrivableLayout layout, double x, double y);

// The same layout as polygons (vector datasets) or as a painted raster
// (raster datasets). Raster maps cover [-60, 60]^2 at 0.1 m/px and use the
// palette from config/raster_palette.json: drivable (128,64,128), crosswalk
// (255,255,255), lane centerline (255,255,0), background (224,224,224),
// buildings (60,60,60). Centerlines are 2 px wide and are not color-filter
// targets; the closing step of the grid pipeline fills them back in.
VectorMap layout_vector_map(DrivableLayout layout);
RasterMap layout_raster_map(DrivableLayout layout, std::uint64_t seed);

// Filter matching the palette's drivable surfaces (drivable + crosswalk),
// tolerance 10 per channel.
ColorFilterSpec synth_color_filter();

}  // namespace beval
