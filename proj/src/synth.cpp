#include "beval/synth.hpp"

#include <algorithm>
#include <cmath>

#include "beval/boxes_raster.hpp"
#include "beval/cloud_file.hpp"
#include "beval/png_io.hpp"
#include "beval/rng.hpp"

namespace beval {

namespace {

// Map/world geometry shared by all layouts. Band edges sit on 0.5 m
// multiples and ego poses snap to the same lattice, so drivable-area edges
// always align with grid-cell and raster-block boundaries.
constexpr double kMapHalf = 60.0;   // maps cover [-60, 60]^2
constexpr double kMapRes = 0.1;     // raster maps, meters per pixel
constexpr double kCrossHalfWidth = 6.0;
constexpr double kRingOuter = 40.0;
constexpr double kRingInner = 28.0;
constexpr double kGridPitch = 25.0;
constexpr double kGridHalfWidth = 5.0;
constexpr double kCenterlineHalfWidth = 0.1;  // 2 px at 0.1 m/px

// Stream salts: the dataset-level stream (maps, camera rig) must not collide
// with the per-sample streams (seed XOR sample index).
constexpr std::uint64_t kDatasetStreamSalt = 0xD1B54A32D192ED03ull;

// Palette; config/raster_palette.json mirrors the filter-target subset.
struct Rgb {
  uint8_t r, g, b;
};
constexpr Rgb kDrivableColor{128, 64, 128};
constexpr Rgb kCrossingColor{255, 255, 255};
constexpr Rgb kCenterlineColor{255, 255, 0};
constexpr Rgb kBackgroundColor{224, 224, 224};
constexpr Rgb kBuildingColor{60, 60, 60};

double band_offset(double v) {
  return v - kGridPitch * std::round(v / kGridPitch);
}

bool on_centerline(DrivableLayout layout, double x, double y) {
  switch (layout) {
    case DrivableLayout::Cross:
      return std::abs(x) < kCenterlineHalfWidth || std::abs(y) < kCenterlineHalfWidth;
    case DrivableLayout::Ring: {
      double mid = 0.5 * (kRingInner + kRingOuter);
      return std::abs(std::abs(x) - mid) < kCenterlineHalfWidth ||
             std::abs(std::abs(y) - mid) < kCenterlineHalfWidth;
    }
    case DrivableLayout::Grid:
      return std::abs(band_offset(x)) < kCenterlineHalfWidth ||
             std::abs(band_offset(y)) < kCenterlineHalfWidth;
  }
  throw InternalError("unknown drivable layout");
}

struct Rect {
  double x0, x1, y0, y1;
  bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

MapPolygon rect_polygon(const Rect& r) {
  MapPolygon poly;
  poly.label = ClassLabel::DrivableArea;
  poly.vertices = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
  return poly;
}

std::vector<Rect> layout_rects(DrivableLayout layout) {
  const double h = kMapHalf;
  switch (layout) {
    case DrivableLayout::Cross:
      return {{-kCrossHalfWidth, kCrossHalfWidth, -h, h},
              {-h, h, -kCrossHalfWidth, kCrossHalfWidth}};
    case DrivableLayout::Ring:
      return {{-kRingOuter, -kRingInner, -kRingOuter, kRingOuter},
              {kRingInner, kRingOuter, -kRingOuter, kRingOuter},
              {-kRingOuter, kRingOuter, -kRingOuter, -kRingInner},
              {-kRingOuter, kRingOuter, kRingInner, kRingOuter}};
    case DrivableLayout::Grid: {
      std::vector<Rect> rects;
      for (int k = -2; k <= 2; ++k) {
        double c = k * kGridPitch;
        rects.push_back({c - kGridHalfWidth, c + kGridHalfWidth, -h, h});
        rects.push_back({-h, h, c - kGridHalfWidth, c + kGridHalfWidth});
      }
      return rects;
    }
  }
  throw InternalError("unknown drivable layout");
}

// --- camera rig -----------------------------------------------------------

struct CameraDef {
  std::string name;
  double yaw;
};

const std::vector<CameraDef>& camera_defs() {
  static const std::vector<CameraDef> defs = {
      {"cam_front", 0.0},           {"cam_front_left", 55.0 * M_PI / 180.0},
      {"cam_front_right", -55.0 * M_PI / 180.0}, {"cam_back", M_PI},
      {"cam_back_left", 125.0 * M_PI / 180.0},   {"cam_back_right", -125.0 * M_PI / 180.0}};
  return defs;
}

// Camera axes: x right, y down, z forward; expressed in the ego frame for a
// forward-looking camera, then yawed around ego +z.
Pose camera_pose(double yaw) {
  Eigen::Matrix3d base;
  base << 0, 0, 1, -1, 0, 0, 0, -1, 0;
  Eigen::Matrix3d rz = Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  Eigen::Vector3d t(std::cos(yaw) * 1.0, std::sin(yaw) * 1.0, 1.6);
  return Pose(Eigen::Quaterniond(rz * base), t);
}

void image_size(ImageGeometry g, int& w, int& h) {
  switch (g) {
    case ImageGeometry::W1600x900: w = 1600; h = 900; return;
    case ImageGeometry::W1920x1080: w = 1920; h = 1080; return;
    case ImageGeometry::W1124x1024: w = 1124; h = 1024; return;
  }
  throw InternalError("unknown image geometry");
}

// --- ray casting -----------------------------------------------------------

struct BoxFrame {
  double cx, cy, cz, c, s, hl, hw, hh;
};

BoxFrame box_frame(const BoxAnnotation& b) {
  return {b.center.x(), b.center.y(),          b.center.z(), std::cos(b.yaw),
          std::sin(b.yaw), 0.5 * b.length, 0.5 * b.width, 0.5 * b.height};
}

// Slab test of ray o + t*d against the oriented box; returns smallest t in
// (t_lo, t_hi) or +inf.
double ray_box(const BoxFrame& bf, const Eigen::Vector3d& o, const Eigen::Vector3d& d,
               double t_lo, double t_hi) {
  // Rotate into the box frame (z is unchanged; boxes yaw about +z only).
  double ox = o.x() - bf.cx, oy = o.y() - bf.cy, oz = o.z() - bf.cz;
  double lox = bf.c * ox + bf.s * oy;
  double loy = -bf.s * ox + bf.c * oy;
  double ldx = bf.c * d.x() + bf.s * d.y();
  double ldy = -bf.s * d.x() + bf.c * d.y();

  double tmin = t_lo, tmax = t_hi;
  const double origin[3] = {lox, loy, oz};
  const double dir[3] = {ldx, ldy, d.z()};
  const double half[3] = {bf.hl, bf.hw, bf.hh};
  for (int axis = 0; axis < 3; ++axis) {
    if (dir[axis] == 0.0) {
      if (std::abs(origin[axis]) > half[axis]) return std::numeric_limits<double>::infinity();
      continue;
    }
    double t1 = (-half[axis] - origin[axis]) / dir[axis];
    double t2 = (half[axis] - origin[axis]) / dir[axis];
    if (t1 > t2) std::swap(t1, t2);
    tmin = std::max(tmin, t1);
    tmax = std::min(tmax, t2);
    if (tmin > tmax) return std::numeric_limits<double>::infinity();
  }
  return tmin;
}

PointCloud cast_cloud(const SynthConfig& cfg, const std::vector<BoxAnnotation>& boxes) {
  PointCloud cloud;
  cloud.frame = Frame::Sensor;
  cloud.points.reserve(static_cast<size_t>(cfg.lidar_layers) * cfg.azimuth_steps);
  std::vector<BoxFrame> frames;
  frames.reserve(boxes.size());
  for (const auto& b : boxes) frames.push_back(box_frame(b));

  const Eigen::Vector3d origin(0.0, 0.0, cfg.lidar_height);
  const double e0 = cfg.elevation_min_deg * M_PI / 180.0;
  const double e1 = cfg.elevation_max_deg * M_PI / 180.0;
  for (int layer = 0; layer < cfg.lidar_layers; ++layer) {
    double frac = cfg.lidar_layers == 1 ? 0.0
                                        : static_cast<double>(layer) / (cfg.lidar_layers - 1);
    double elev = e0 + (e1 - e0) * frac;
    double ce = std::cos(elev), se = std::sin(elev);
    for (int step = 0; step < cfg.azimuth_steps; ++step) {
      double az = -M_PI + 2.0 * M_PI * step / cfg.azimuth_steps;
      Eigen::Vector3d d(ce * std::cos(az), ce * std::sin(az), se);
      double t_ground = -cfg.lidar_height / se;  // se < 0: every ray hits ground
      double t = t_ground;
      double intensity = 0.25;
      for (const BoxFrame& bf : frames) {
        double tb = ray_box(bf, origin, d, 1e-6, t);
        if (tb < t) {
          t = tb;
          intensity = 0.85;
        }
      }
      // Sensor-frame hit: rays originate at the sensor.
      cloud.points.push_back({t * d.x(), t * d.y(), t * d.z(), intensity});
    }
  }
  return cloud;
}

// --- image rendering -------------------------------------------------------

void fill_rect(ImageU8& img, int x0, int y0, int x1, int y1, Rgb color) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, img.width - 1);
  y1 = std::min(y1, img.height - 1);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      img.at(y, x, 0) = color.r;
      img.at(y, x, 1) = color.g;
      img.at(y, x, 2) = color.b;
    }
}

ImageU8 render_camera(const std::vector<BoxAnnotation>& boxes, const Pose& cam_to_ego,
                      const Intrinsics& K) {
  ImageU8 img = ImageU8::make(K.width, K.height, 3);
  fill_rect(img, 0, 0, K.width - 1, K.height / 2 - 1, {150, 170, 190});   // sky
  fill_rect(img, 0, K.height / 2, K.width - 1, K.height - 1, {95, 95, 100});  // ground
  Pose ego_to_cam = cam_to_ego.inverse();

  // Painter's order: far boxes first.
  std::vector<std::pair<double, size_t>> order;
  for (size_t i = 0; i < boxes.size(); ++i) {
    Eigen::Vector3d c = ego_to_cam.apply(boxes[i].center);
    if (c.z() > 0.5) order.emplace_back(-c.z(), i);
  }
  std::sort(order.begin(), order.end());

  for (const auto& entry : order) {
    const size_t i = entry.second;
    const BoxAnnotation& b = boxes[i];
    double cy = std::cos(b.yaw), sy = std::sin(b.yaw);
    double u_min = 1e30, u_max = -1e30, v_min = 1e30, v_max = -1e30;
    int in_front = 0;
    for (int corner = 0; corner < 8; ++corner) {
      double lx = (corner & 1 ? 0.5 : -0.5) * b.length;
      double ly = (corner & 2 ? 0.5 : -0.5) * b.width;
      double lz = (corner & 4 ? 0.5 : -0.5) * b.height;
      Eigen::Vector3d p_ego(b.center.x() + cy * lx - sy * ly,
                            b.center.y() + sy * lx + cy * ly, b.center.z() + lz);
      Eigen::Vector3d p_cam = ego_to_cam.apply(p_ego);
      if (p_cam.z() < 0.1) continue;
      ++in_front;
      Eigen::Vector2d px = K.project(p_cam);
      u_min = std::min(u_min, px.x());
      u_max = std::max(u_max, px.x());
      v_min = std::min(v_min, px.y());
      v_max = std::max(v_max, px.y());
    }
    if (in_front < 8) continue;  // skip partially-behind boxes; content is decorative
    Rgb color = b.label == ClassLabel::Vehicle
                    ? Rgb{static_cast<uint8_t>(150 + 13 * (i % 8)), 45, 45}
                    : Rgb{230, 195, 70};
    fill_rect(img, static_cast<int>(std::floor(u_min)), static_cast<int>(std::floor(v_min)),
              static_cast<int>(std::ceil(u_max)), static_cast<int>(std::ceil(v_max)), color);
  }
  return img;
}

// --- scene sampling --------------------------------------------------------

std::vector<BoxAnnotation> sample_boxes(SplitMix64& rng, int n_min, int n_max) {
  int target = n_min + static_cast<int>(rng.below(static_cast<uint64_t>(n_max - n_min + 1)));
  std::vector<BoxAnnotation> boxes;
  for (int i = 0; i < target; ++i) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      BoxAnnotation b;
      bool vehicle = rng.uniform01() < 0.7;
      b.label = vehicle ? ClassLabel::Vehicle : ClassLabel::Human;
      if (vehicle) {
        b.length = rng.uniform(3.5, 5.5);
        b.width = rng.uniform(1.6, 2.2);
        b.height = rng.uniform(1.4, 2.0);
      } else {
        b.length = rng.uniform(0.6, 0.9);
        b.width = rng.uniform(0.6, 0.9);
        b.height = rng.uniform(1.5, 1.9);
      }
      double x = rng.uniform(-45.0, 45.0);
      double y = rng.uniform(-45.0, 45.0);
      double yaw = rng.uniform(-M_PI, M_PI);
      if (yaw >= M_PI) yaw = -M_PI;
      if (std::hypot(x, y) < 4.0) continue;  // keep the sensor outside every box
      b.center = {x, y, 0.5 * b.height};
      b.yaw = yaw;
      double radius = 0.5 * std::hypot(b.length, b.width);
      bool collides = false;
      for (const auto& other : boxes) {
        double r2 = 0.5 * std::hypot(other.length, other.width);
        if (std::hypot(x - other.center.x(), y - other.center.y()) < radius + r2 + 0.25) {
          collides = true;
          break;
        }
      }
      if (collides) continue;
      b.validate();
      boxes.push_back(b);
      break;
    }
  }
  return boxes;
}

Pose sample_ego_pose(SplitMix64& rng) {
  // Yaw snapped to quarter turns and translation to the 0.5 m lattice keep
  // map-frame band edges aligned with grid-cell boundaries.
  static const double yaws[4] = {0.0, M_PI_2, M_PI, -M_PI_2};
  double yaw = yaws[rng.below(4)];
  double tx = (static_cast<double>(rng.below(41)) - 20.0) * 0.5;
  double ty = (static_cast<double>(rng.below(41)) - 20.0) * 0.5;
  return Pose::from_yaw(yaw, {tx, ty, 0.0});
}

std::string sample_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "s%04d", index);
  return buf;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_samples < 1) throw ValidationError("synth: n_samples must be >= 1");
  if (lidar_layers < 1) throw ValidationError("synth: lidar_layers must be >= 1");
  if (azimuth_steps < 1) throw ValidationError("synth: azimuth_steps must be >= 1");
  if (n_boxes_min < 0 || n_boxes_max < n_boxes_min)
    throw ValidationError("synth: invalid box count range");
  if (n_cameras < 0 || n_cameras > static_cast<int>(camera_defs().size()))
    throw ValidationError("synth: n_cameras out of range");
  if (!(lidar_height > 0.0)) throw ValidationError("synth: lidar_height must be positive");
  if (!(elevation_min_deg < elevation_max_deg) || elevation_max_deg >= 0.0)
    throw ValidationError("synth: elevations must be increasing and below the horizon");
  if (dataset_id.empty()) throw ValidationError("synth: dataset_id must be nonempty");
}

SynthConfig SynthConfig::profile(const std::string& name) {
  SynthConfig cfg;
  if (name == "nuscenes-like") {
    cfg.lidar_layers = 32;
    cfg.azimuth_steps = 1500;
    cfg.image_geometry = ImageGeometry::W1600x900;
    cfg.map_kind = MapKind::Vector;
    cfg.drivable_layout = DrivableLayout::Cross;
    cfg.dataset_id = "nuscenes-like";
  } else if (name == "wovenplanet-like") {
    cfg.lidar_layers = 64;
    cfg.azimuth_steps = 2200;
    cfg.image_geometry = ImageGeometry::W1124x1024;
    cfg.map_kind = MapKind::Raster;
    cfg.drivable_layout = DrivableLayout::Grid;
    cfg.dataset_id = "wovenplanet-like";
  } else {
    throw ValidationError("unknown synth profile: " + name);
  }
  return cfg;
}

bool layout_contains(DrivableLayout layout, double x, double y) {
  if (std::abs(x) > kMapHalf || std::abs(y) > kMapHalf) return false;
  switch (layout) {
    case DrivableLayout::Cross:
      return std::abs(x) <= kCrossHalfWidth || std::abs(y) <= kCrossHalfWidth;
    case DrivableLayout::Ring:
      return std::abs(x) <= kRingOuter && std::abs(y) <= kRingOuter &&
             (std::abs(x) >= kRingInner || std::abs(y) >= kRingInner);
    case DrivableLayout::Grid:
      return std::abs(band_offset(x)) <= kGridHalfWidth ||
             std::abs(band_offset(y)) <= kGridHalfWidth;
  }
  throw InternalError("unknown drivable layout");
}

VectorMap layout_vector_map(DrivableLayout layout) {
  VectorMap map;
  for (const Rect& r : layout_rects(layout)) map.polygons.push_back(rect_polygon(r));
  return map;
}

RasterMap layout_raster_map(DrivableLayout layout, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Rect> buildings;
  for (int i = 0; i < 8; ++i) {
    double cx = rng.uniform(-55.0, 55.0), cyy = rng.uniform(-55.0, 55.0);
    double hx = rng.uniform(3.0, 8.0), hy = rng.uniform(3.0, 8.0);
    buildings.push_back({cx - hx, cx + hx, cyy - hy, cyy + hy});
  }
  std::vector<Rect> crossings;
  for (int i = 0; i < 6; ++i) {
    double cx = rng.uniform(-50.0, 50.0), cyy = rng.uniform(-50.0, 50.0);
    crossings.push_back({cx - 1.5, cx + 1.5, cyy - 1.5, cyy + 1.5});
  }

  const int side = static_cast<int>(std::lround(2.0 * kMapHalf / kMapRes));
  RasterMap map;
  map.image = ImageU8::make(side, side, 3);
  map.origin = {-kMapHalf, -kMapHalf};
  map.resolution = kMapRes;
  for (int row = 0; row < side; ++row) {
    double y = -kMapHalf + (row + 0.5) * kMapRes;
    for (int col = 0; col < side; ++col) {
      double x = -kMapHalf + (col + 0.5) * kMapRes;
      bool road = layout_contains(layout, x, y);
      Rgb color = kBackgroundColor;
      if (!road) {
        for (const Rect& r : buildings)
          if (r.contains(x, y)) {
            color = kBuildingColor;
            break;
          }
      } else {
        color = kDrivableColor;
        if (on_centerline(layout, x, y)) color = kCenterlineColor;
        for (const Rect& r : crossings)
          if (r.contains(x, y)) {
            color = kCrossingColor;
            break;
          }
      }
      map.image.at(row, col, 0) = color.r;
      map.image.at(row, col, 1) = color.g;
      map.image.at(row, col, 2) = color.b;
    }
  }
  return map;
}

ColorFilterSpec synth_color_filter() {
  ColorFilterSpec filter;
  filter.targets.push_back({kDrivableColor.r, kDrivableColor.g, kDrivableColor.b, 10, 10, 10});
  filter.targets.push_back({kCrossingColor.r, kCrossingColor.g, kCrossingColor.b, 10, 10, 10});
  return filter;
}

SynthResult generate(const SynthConfig& config, const std::filesystem::path& out_dir) {
  config.validate();
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir / "samples", ec);
  fs::create_directories(out_dir / "map", ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir.string());

  SynthResult result;
  result.manifest.dataset_id = config.dataset_id;
  result.manifest.base_dir = out_dir;

  // Dataset-level stream: map decoration and the camera rig intrinsics.
  SplitMix64 dataset_rng(config.seed ^ kDatasetStreamSalt);
  if (config.map_kind == MapKind::Vector) {
    save_vector_map(layout_vector_map(config.drivable_layout), out_dir / "map" / "map.geojson");
    result.manifest.map = {MapRef::Kind::Vector, "map/map.geojson", ""};
  } else {
    RasterMap map = layout_raster_map(config.drivable_layout, dataset_rng.next());
    save_raster_map(map, out_dir / "map" / "map.png", out_dir / "map" / "map_meta.json", 1);
    result.manifest.map = {MapRef::Kind::Raster, "map/map.png", "map/map_meta.json"};
  }

  int img_w = 0, img_h = 0;
  image_size(config.image_geometry, img_w, img_h);
  std::vector<Intrinsics> rig_intrinsics;
  std::vector<Pose> rig_poses;
  for (int c = 0; c < config.n_cameras; ++c) {
    Intrinsics K;
    K.width = img_w;
    K.height = img_h;
    K.fx = K.fy = 0.79 * img_w * (1.0 + 0.02 * (dataset_rng.uniform01() - 0.5));
    K.cx = img_w / 2.0 + 4.0 * (dataset_rng.uniform01() - 0.5);
    K.cy = img_h / 2.0 + 4.0 * (dataset_rng.uniform01() - 0.5);
    K.validate();
    rig_intrinsics.push_back(K);
    rig_poses.push_back(camera_pose(camera_defs()[c].yaw));
  }

  const Pose lidar_to_ego(Eigen::Quaterniond::Identity(),
                          Eigen::Vector3d(0.0, 0.0, config.lidar_height));

  for (int i = 0; i < config.n_samples; ++i) {
    SplitMix64 rng(config.seed ^ static_cast<std::uint64_t>(i));
    SynthScene scene;
    scene.sample_id = sample_name(i);
    scene.layout = config.drivable_layout;
    scene.ego_to_map = sample_ego_pose(rng);
    scene.boxes = sample_boxes(rng, config.n_boxes_min, config.n_boxes_max);

    fs::path sdir = out_dir / "samples" / scene.sample_id;
    fs::create_directories(sdir, ec);
    if (ec) throw IoError("cannot create sample directory: " + sdir.string());

    save_cloud(cast_cloud(config, scene.boxes), sdir / "lidar.bevl");
    save_boxes(scene.boxes, sdir / "boxes.json");

    SampleRecord record;
    record.sample_id = scene.sample_id;
    record.lidar_path = "samples/" + scene.sample_id + "/lidar.bevl";
    record.lidar_to_ego = lidar_to_ego;
    record.boxes_path = "samples/" + scene.sample_id + "/boxes.json";
    record.ego_to_map = scene.ego_to_map;
    for (int c = 0; c < config.n_cameras; ++c) {
      const std::string& cam_name = camera_defs()[c].name;
      std::string image_rel = "samples/" + scene.sample_id + "/" + cam_name + ".png";
      save_png(render_camera(scene.boxes, rig_poses[c], rig_intrinsics[c]),
               out_dir / image_rel, 1);
      record.cameras.push_back({cam_name, image_rel, rig_intrinsics[c], rig_poses[c]});
    }
    result.manifest.samples.push_back(std::move(record));
    result.scenes.push_back(std::move(scene));
  }

  result.manifest_path = out_dir / "manifest.json";
  save_manifest(result.manifest, result.manifest_path);
  return result;
}

SemanticGrid synth_ground_truth(const SynthScene& scene, const GridSpec& spec,
                                const std::vector<ClassLabel>& classes) {
  SemanticGrid grid = SemanticGrid::binary(spec, classes);
  for (size_t plane = 0; plane < classes.size(); ++plane) {
    ClassLabel label = classes[plane];
    for (int row = 0; row < spec.cells_per_side; ++row) {
      double y = spec.cell_center_y(row);
      for (int col = 0; col < spec.cells_per_side; ++col) {
        double x = spec.cell_center_x(col);
        bool hit = false;
        if (label == ClassLabel::DrivableArea) {
          Eigen::Vector3d p = scene.ego_to_map.apply({x, y, 0.0});
          hit = layout_contains(scene.layout, p.x(), p.y());
        } else {
          for (const BoxAnnotation& b : scene.boxes) {
            if (b.label != label) continue;
            double c = std::cos(b.yaw), s = std::sin(b.yaw);
            double dx = x - b.center.x(), dy = y - b.center.y();
            double u = c * dx + s * dy;
            double v = -s * dx + c * dy;
            if (std::abs(u) <= 0.5 * b.length && std::abs(v) <= 0.5 * b.width) {
              hit = true;
              break;
            }
          }
        }
        if (hit) grid.at(plane, row, col) = 1;
      }
    }
  }
  return grid;
}

}  // namespace beval
