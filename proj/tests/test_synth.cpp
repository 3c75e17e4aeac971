#include <algorithm>
#include <cmath>
#include <map>

#include "beval/cloud_file.hpp"
#include "beval/manifest.hpp"
#include "beval/pipeline.hpp"
#include "beval/png_io.hpp"
#include "beval/rng.hpp"
#include "beval/subsample.hpp"
#include "beval/synth.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace beval;
namespace fs = std::filesystem;

namespace {

// Relative path -> file bytes for a whole generated tree.
std::map<std::string, std::string> snapshot_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file())
      files[fs::relative(entry.path(), root).generic_string()] = read_file_bytes(entry.path());
  return files;
}

SynthConfig tiny_config() {
  SynthConfig cfg;
  cfg.seed = 123;
  cfg.n_samples = 2;
  cfg.lidar_layers = 8;
  cfg.azimuth_steps = 100;
  cfg.n_cameras = 0;
  cfg.n_boxes_min = 2;
  cfg.n_boxes_max = 5;
  cfg.dataset_id = "tiny";
  return cfg;
}

void check_gt_pipeline_matches_analytic(const SynthConfig& cfg) {
  TempDir tmp;
  SynthResult result = generate(cfg, tmp.path);
  GridSpec spec = GridSpec::make(100.0, 0.5);
  std::vector<ClassLabel> classes = {ClassLabel::Vehicle, ClassLabel::Human,
                                     ClassLabel::DrivableArea};

  LoadedDataset ds = load_dataset(result.manifest_path);
  REQUIRE(ds.manifest.samples.size() == result.scenes.size());

  for (size_t i = 0; i < ds.manifest.samples.size(); ++i) {
    const SampleRecord& sample = ds.manifest.samples[i];
    const SynthScene* scene = nullptr;
    for (const auto& s : result.scenes)
      if (s.sample_id == sample.sample_id) scene = &s;
    REQUIRE(scene != nullptr);

    std::vector<std::string> warnings;
    SemanticGrid pipeline_gt = generate_sample_gt(ds, sample, spec, classes, &warnings);
    SemanticGrid analytic = synth_ground_truth(*scene, spec, classes);
    CHECK(warnings.empty());
    REQUIRE(pipeline_gt.classes == analytic.classes);
    // cell-for-cell equality, not approximate overlap
    CHECK(pipeline_gt.bits == analytic.bits);
  }
}

}  // namespace

TEST_CASE("generation is byte-identical for the same seed and differs for another") {
  SynthConfig cfg = tiny_config();
  cfg.n_cameras = 1;
  cfg.map_kind = MapKind::Raster;
  cfg.drivable_layout = DrivableLayout::Ring;

  TempDir a, b, c;
  generate(cfg, a.path);
  generate(cfg, b.path);
  auto ta = snapshot_tree(a.path), tb = snapshot_tree(b.path);
  REQUIRE_FALSE(ta.empty());
  CHECK(ta == tb);

  cfg.seed = 124;
  generate(cfg, c.path);
  auto tc = snapshot_tree(c.path);
  REQUIRE(tc.size() == ta.size());
  bool any_differs = false;
  for (const auto& [rel, bytes] : ta)
    if (tc.at(rel) != bytes) any_differs = true;
  CHECK(any_differs);
}

TEST_CASE("every ray returns: cloud size equals layers x azimuth steps") {
  SynthConfig cfg = tiny_config();
  cfg.n_samples = 1;
  TempDir tmp;
  SynthResult r = generate(cfg, tmp.path);
  PointCloud cloud = load_cloud(r.manifest.resolve(r.manifest.samples[0].lidar_path));
  CHECK(cloud.size() == static_cast<size_t>(cfg.lidar_layers) * cfg.azimuth_steps);
}

TEST_CASE("raw cloud sizes of the two profiles keep a >= 1.5x density gap") {
  SynthConfig ns = SynthConfig::profile("nuscenes-like");
  SynthConfig wp = SynthConfig::profile("wovenplanet-like");
  CHECK(ns.lidar_layers == 32);
  CHECK(ns.azimuth_steps == 1500);
  CHECK(wp.lidar_layers == 64);
  CHECK(wp.azimuth_steps == 2200);
  double ratio = double(wp.lidar_layers) * wp.azimuth_steps /
                 (double(ns.lidar_layers) * ns.azimuth_steps);
  CHECK(ratio >= 1.5);
  CHECK_THROWS_AS(SynthConfig::profile("kitti-like"), ValidationError);
}

TEST_CASE("sector subsampling maps the dense profile onto the sparse profile's budget") {
  // 64 layers spread over the same elevation span occupy every one of the 32
  // observed-range bins, and 2200 azimuth steps occupy all 1500 azimuth bins,
  // so the subsampled dense cloud holds exactly 32 x 1500 points.
  SynthConfig wp = SynthConfig::profile("wovenplanet-like");
  wp.n_samples = 1;
  wp.n_cameras = 0;
  wp.seed = 9;
  TempDir tmp;
  SynthResult r = generate(wp, tmp.path);
  PointCloud dense = load_cloud(r.manifest.resolve(r.manifest.samples[0].lidar_path));
  REQUIRE(dense.size() == 64u * 2200u);

  SectorGridSpec sectors;  // 32 x 1500, observed elevation range
  PointCloud sub = subsample(dense, sectors);
  CHECK(sub.size() == 32u * 1500u);
}

TEST_CASE("box sampling honors the configured count range and size model") {
  SynthConfig cfg = tiny_config();
  cfg.n_samples = 6;
  cfg.n_boxes_min = 4;
  cfg.n_boxes_max = 10;
  TempDir tmp;
  SynthResult r = generate(cfg, tmp.path);
  REQUIRE(r.scenes.size() == 6);
  for (const SynthScene& scene : r.scenes) {
    CHECK(scene.boxes.size() >= 4);
    CHECK(scene.boxes.size() <= 10);
    for (const BoxAnnotation& b : scene.boxes) {
      b.validate();
      CHECK(std::hypot(b.center.x(), b.center.y()) >= 4.0);
      CHECK(std::abs(b.center.x()) <= 45.0);
      CHECK(std::abs(b.center.y()) <= 45.0);
      CHECK(b.center.z() == doctest::Approx(b.height / 2.0));
      if (b.label == ClassLabel::Vehicle) {
        CHECK(b.length >= 3.5);
        CHECK(b.length <= 5.5);
        CHECK(b.width >= 1.6);
        CHECK(b.width <= 2.2);
      } else {
        CHECK(b.label == ClassLabel::Human);
        CHECK(b.length >= 0.6);
        CHECK(b.length <= 0.9);
        CHECK(b.height >= 1.5);
        CHECK(b.height <= 1.9);
      }
    }
    // the on-disk annotation file carries the same boxes
    for (const auto& s : r.manifest.samples)
      if (s.sample_id == scene.sample_id) {
        auto loaded = load_boxes(r.manifest.resolve(s.boxes_path));
        REQUIRE(loaded.size() == scene.boxes.size());
      }
  }
}

TEST_CASE("a box-free dataset has empty vehicle and human planes") {
  SynthConfig cfg = tiny_config();
  cfg.n_boxes_min = 0;
  cfg.n_boxes_max = 0;
  TempDir tmp;
  SynthResult r = generate(cfg, tmp.path);
  GridSpec spec = GridSpec::make(100.0, 0.5);
  for (const SynthScene& scene : r.scenes) {
    CHECK(scene.boxes.empty());
    SemanticGrid gt = synth_ground_truth(scene, spec,
                                         {ClassLabel::Vehicle, ClassLabel::Human});
    CHECK(std::count(gt.bits.begin(), gt.bits.end(), 1) == 0);
  }
}

TEST_CASE("drivable layout membership: hand-picked points") {
  CHECK(layout_contains(DrivableLayout::Cross, 0.0, 0.0));
  CHECK(layout_contains(DrivableLayout::Cross, 55.0, 3.0));
  CHECK(layout_contains(DrivableLayout::Cross, -2.0, 58.0));
  CHECK_FALSE(layout_contains(DrivableLayout::Cross, 10.0, 10.0));
  CHECK_FALSE(layout_contains(DrivableLayout::Cross, 61.0, 0.0));  // beyond the map

  CHECK(layout_contains(DrivableLayout::Ring, 34.0, 0.0));
  CHECK(layout_contains(DrivableLayout::Ring, 34.0, 34.0));
  CHECK_FALSE(layout_contains(DrivableLayout::Ring, 0.0, 0.0));   // hole
  CHECK_FALSE(layout_contains(DrivableLayout::Ring, 45.0, 0.0));  // outside

  CHECK(layout_contains(DrivableLayout::Grid, 25.0, 12.0));  // on a band center
  CHECK(layout_contains(DrivableLayout::Grid, -50.0, 12.0));
  CHECK_FALSE(layout_contains(DrivableLayout::Grid, 12.5, 12.5));  // between bands
}

TEST_CASE("vector map files reproduce the closed-form layout membership") {
  for (DrivableLayout layout :
       {DrivableLayout::Cross, DrivableLayout::Ring, DrivableLayout::Grid}) {
    VectorMap map = layout_vector_map(layout);
    map.validate();
    SplitMix64 rng(77);
    for (int i = 0; i < 4000; ++i) {
      double x = rng.uniform(-59.0, 59.0), y = rng.uniform(-59.0, 59.0);
      // stay away from band edges, which are exact-boundary territory
      bool near_edge = false;
      for (double c : {x, y})
        for (double edge : {6.0, 28.0, 40.0}) {
          if (std::abs(std::abs(c) - edge) < 1e-6) near_edge = true;
        }
      if (near_edge) continue;
      bool in_any = false;
      for (const auto& poly : map.polygons)
        if (point_in_polygon({x, y}, poly.vertices)) in_any = true;
      if (in_any != layout_contains(layout, x, y)) {
        CAPTURE(x);
        CAPTURE(y);
        REQUIRE(in_any == layout_contains(layout, x, y));
      }
    }
  }
}

TEST_CASE("raster map: palette, size and centerline gaps that close") {
  RasterMap map = layout_raster_map(DrivableLayout::Cross, 5);
  map.validate();
  CHECK(map.image.width == 1200);
  CHECK(map.image.height == 1200);
  CHECK(map.origin.x() == -60.0);
  CHECK(map.origin.y() == -60.0);
  CHECK(map.resolution == doctest::Approx(0.1));

  ColorFilterSpec filter = synth_color_filter();
  size_t drivable_px = 0, centerline_px = 0;
  for (int y = 0; y < map.image.height; ++y)
    for (int x = 0; x < map.image.width; ++x) {
      uint8_t r = map.image.at(y, x, 0), g = map.image.at(y, x, 1), b = map.image.at(y, x, 2);
      if (filter.matches(r, g, b)) ++drivable_px;
      if (r == 255 && g == 255 && b == 0) ++centerline_px;
    }
  CHECK(drivable_px > 0);
  CHECK(centerline_px > 0);  // centerlines punch holes the filter must not match

  // centerline pixels are never filter targets; closing has to refill them
  CHECK_FALSE(filter.matches(255, 255, 0));
}

TEST_CASE("analytic ground truth of a hand-built scene") {
  SynthScene scene;
  scene.sample_id = "manual";
  scene.layout = DrivableLayout::Cross;
  scene.ego_to_map = Pose::identity();
  BoxAnnotation box;
  box.center = {10.0, 5.0, 0.9};
  box.length = 4.0;
  box.width = 2.0;
  box.height = 1.8;
  box.yaw = 0.0;
  box.label = ClassLabel::Vehicle;
  scene.boxes.push_back(box);

  GridSpec spec = GridSpec::make(100.0, 0.5);
  SemanticGrid gt =
      synth_ground_truth(scene, spec, {ClassLabel::Vehicle, ClassLabel::DrivableArea});

  size_t vplane = gt.plane_of(ClassLabel::Vehicle);
  size_t dplane = gt.plane_of(ClassLabel::DrivableArea);
  int vehicle_on = 0, drivable_on = 0;
  for (int row = 0; row < 200; ++row)
    for (int col = 0; col < 200; ++col) {
      vehicle_on += gt.at(vplane, row, col);
      drivable_on += gt.at(dplane, row, col);
    }
  CHECK(vehicle_on == 32);       // 8 x 4 cell footprint
  CHECK(drivable_on == 9024);    // 2 * 24 * 200 - 24^2 cross cells
}

TEST_CASE("grid pipeline reproduces the analytic ground truth cell-for-cell") {
  SUBCASE("vector map, cross layout") {
    SynthConfig cfg = tiny_config();
    cfg.map_kind = MapKind::Vector;
    cfg.drivable_layout = DrivableLayout::Cross;
    check_gt_pipeline_matches_analytic(cfg);
  }
  SUBCASE("raster map, ring layout") {
    SynthConfig cfg = tiny_config();
    cfg.seed = 31;
    cfg.map_kind = MapKind::Raster;
    cfg.drivable_layout = DrivableLayout::Ring;
    check_gt_pipeline_matches_analytic(cfg);
  }
  SUBCASE("raster map, grid layout") {
    SynthConfig cfg = tiny_config();
    cfg.seed = 77;
    cfg.map_kind = MapKind::Raster;
    cfg.drivable_layout = DrivableLayout::Grid;
    check_gt_pipeline_matches_analytic(cfg);
  }
  SUBCASE("vector map, ring layout") {
    SynthConfig cfg = tiny_config();
    cfg.seed = 55;
    cfg.map_kind = MapKind::Vector;
    cfg.drivable_layout = DrivableLayout::Ring;
    check_gt_pipeline_matches_analytic(cfg);
  }
}

TEST_CASE("camera rendering writes decodable images matching the manifest intrinsics") {
  SynthConfig cfg = tiny_config();
  cfg.n_samples = 1;
  cfg.n_cameras = 2;
  cfg.image_geometry = ImageGeometry::W1600x900;
  TempDir tmp;
  SynthResult r = generate(cfg, tmp.path);
  REQUIRE(r.manifest.samples.size() == 1);
  REQUIRE(r.manifest.samples[0].cameras.size() == 2);
  for (const CameraRecord& cam : r.manifest.samples[0].cameras) {
    ImageU8 img = load_png(r.manifest.resolve(cam.image_path));
    CHECK(img.width == 1600);
    CHECK(img.height == 900);
    CHECK(img.channels == 3);
    cam.intrinsics.validate();
    CHECK(cam.intrinsics.width == 1600);
    CHECK(cam.intrinsics.cx == doctest::Approx(800.0).epsilon(0.01));
    CHECK(cam.sensor_to_ego.is_valid());
  }
}

TEST_CASE("synth config validation") {
  SynthConfig cfg;
  cfg.n_samples = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = SynthConfig{};
  cfg.n_boxes_min = 5;
  cfg.n_boxes_max = 2;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = SynthConfig{};
  cfg.elevation_max_deg = 10.0;  // above the horizon: rays would never land
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}
