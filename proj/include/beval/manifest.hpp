#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "beval/geometry.hpp"
#include "beval/types.hpp"

namespace beval {

// On-disk description of one harmonized dataset. All paths are stored
// relative to the manifest file and resolved against its directory.
// Schema: manifest.schema.json in the repository root.

struct CameraRecord {
  std::string name;
  std::string image_path;
  Intrinsics intrinsics;
  Pose sensor_to_ego;
};

struct SampleRecord {
  std::string sample_id;
  std::string lidar_path;
  Pose lidar_to_ego;
  std::vector<CameraRecord> cameras;
  std::string boxes_path;
  Pose ego_to_map;
};

struct MapRef {
  enum class Kind : uint8_t { Vector, Raster } kind = Kind::Vector;
  std::string path;       // vector: GeoJSON-style polygons; raster: PNG
  std::string meta_path;  // raster only: origin + resolution JSON
};

struct DatasetManifest {
  std::string dataset_id;
  MapRef map;
  std::vector<SampleRecord> samples;
  std::filesystem::path base_dir;  // directory of the manifest file

  std::filesystem::path resolve(const std::string& rel) const { return base_dir / rel; }
};

// Parses and fully validates a manifest: schema, duplicate sample ids,
// pose orthonormality, and existence of every referenced file.
DatasetManifest load_manifest(const std::filesystem::path& path);

// Canonical serialization: sorted keys, 2-space indent, trailing newline.
// save(load(x)) is byte-identical to x for files produced by save.
void save_manifest(const DatasetManifest& m, const std::filesystem::path& path);

std::vector<BoxAnnotation> load_boxes(const std::filesystem::path& path);
void save_boxes(const std::vector<BoxAnnotation>& boxes, const std::filesystem::path& path);

}  // namespace beval
