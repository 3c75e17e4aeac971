#include <cmath>
#include <filesystem>

#include "beval/cloud_file.hpp"
#include "beval/error.hpp"
#include "beval/geometry.hpp"
#include "beval/grid.hpp"
#include "beval/manifest.hpp"
#include "beval/rng.hpp"
#include "beval/types.hpp"
#include "beval/vector_map.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace beval;

TEST_CASE("pose validity accepts proper rotations and rejects everything else") {
  CHECK(Pose::identity().is_valid());
  CHECK(Pose::from_yaw(1.234).is_valid());
  CHECK(Pose::from_yaw(-3.0, {5.0, -2.0, 0.7}).is_valid());

  // A non-unit quaternion with mixed components yields a skewed matrix.
  Eigen::Quaterniond bad(0.5, 0.5, 0.0, 0.0);
  CHECK_FALSE(Pose(bad, Eigen::Vector3d::Zero()).is_valid());
}

TEST_CASE("pose inverse composes to the identity") {
  SplitMix64 rng(11);
  for (int i = 0; i < 50; ++i) {
    double yaw = rng.uniform(-M_PI, M_PI);
    Eigen::Vector3d axis(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    axis.normalize();
    double angle = rng.uniform(-M_PI, M_PI);
    Pose p(Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis)),
           {rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-10, 10)});
    (void)yaw;
    REQUIRE(p.is_valid());
    Pose inv = p.inverse();
    REQUIRE(inv.is_valid());
    Eigen::Vector3d v(rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-5, 5));
    Eigen::Vector3d back = inv.apply(p.apply(v));
    CHECK((back - v).norm() < 1e-9);
  }
}

TEST_CASE("pose from_yaw rotates x toward y") {
  // yaw = +pi/2 sends +x (forward) to +y (left).
  Pose p = Pose::from_yaw(M_PI / 2.0);
  Eigen::Vector3d r = p.apply({1.0, 0.0, 0.0});
  CHECK(r.x() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.y() == doctest::Approx(1.0));
  CHECK(r.z() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("transform_cloud applies the pose, keeps intensity, tags the frame") {
  PointCloud cloud;
  cloud.frame = Frame::Sensor;
  cloud.points = {{1.0, 0.0, 0.0, 0.25}, {0.0, 2.0, 1.0, 0.75}};
  Pose pose = Pose::from_yaw(M_PI / 2.0, {10.0, 0.0, 1.0});

  PointCloud out = transform_cloud(cloud, pose);
  REQUIRE(out.size() == 2);
  CHECK(out.frame == Frame::Ego);
  CHECK(out.points[0].x == doctest::Approx(10.0));
  CHECK(out.points[0].y == doctest::Approx(1.0));
  CHECK(out.points[0].z == doctest::Approx(1.0));
  CHECK(out.points[0].intensity == 0.25);
  CHECK(out.points[1].x == doctest::Approx(8.0));
  CHECK(out.points[1].y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(out.points[1].intensity == 0.75);
}

TEST_CASE("transform_cloud round-trips through the inverse pose within 1e-9") {
  SplitMix64 rng(23);
  PointCloud cloud;
  for (int i = 0; i < 500; ++i)
    cloud.points.push_back({rng.uniform(-80, 80), rng.uniform(-80, 80),
                            rng.uniform(-3, 6), rng.uniform01()});
  Eigen::Vector3d axis(0.3, -0.2, 0.93);
  axis.normalize();
  Pose pose(Eigen::Quaterniond(Eigen::AngleAxisd(2.1, axis)), {4.0, -7.0, 0.5});

  PointCloud fwd = transform_cloud(cloud, pose);
  PointCloud back = transform_cloud(fwd, pose.inverse(), Frame::Sensor);
  REQUIRE(back.size() == cloud.size());
  for (size_t i = 0; i < cloud.size(); ++i) {
    CHECK(std::abs(back.points[i].x - cloud.points[i].x) < 1e-9);
    CHECK(std::abs(back.points[i].y - cloud.points[i].y) < 1e-9);
    CHECK(std::abs(back.points[i].z - cloud.points[i].z) < 1e-9);
    CHECK(back.points[i].intensity == cloud.points[i].intensity);
  }

  // Rigid transforms preserve pairwise distances.
  for (size_t i = 1; i < 20; ++i) {
    auto d = [](const Point3& a, const Point3& b) {
      return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
    };
    CHECK(d(fwd.points[i], fwd.points[i - 1]) ==
          doctest::Approx(d(cloud.points[i], cloud.points[i - 1])).epsilon(1e-12));
  }
}

TEST_CASE("transform_cloud rejects an invalid rotation") {
  PointCloud cloud;
  cloud.points = {{1, 2, 3, 0}};
  Pose bad(Eigen::Quaterniond(0.5, 0.5, 0.0, 0.0), Eigen::Vector3d::Zero());
  CHECK_FALSE(bad.is_valid());
  CHECK_THROWS_AS(transform_cloud(cloud, bad), ValidationError);
}

TEST_CASE("grid spec construction and cell centers") {
  GridSpec spec = GridSpec::make(100.0, 0.5);
  CHECK(spec.cells_per_side == 200);
  CHECK(spec.cell_center_x(0) == doctest::Approx(-49.75));
  CHECK(spec.cell_center_x(199) == doctest::Approx(49.75));
  CHECK(spec.cell_center_x(99) == doctest::Approx(-0.25));
  CHECK(spec.cell_center_x(100) == doctest::Approx(0.25));
  CHECK(spec.cell_center_y(0) == doctest::Approx(-49.75));

  GridSpec small = GridSpec::make(8.0, 2.0);
  CHECK(small.cells_per_side == 4);

  CHECK_THROWS_AS(GridSpec::make(100.0, 0.3), ValidationError);
  CHECK_THROWS_AS(GridSpec::make(100.0, -0.5), ValidationError);
  CHECK_THROWS_AS(GridSpec::make(0.0, 0.5), ValidationError);
}

TEST_CASE("semantic grid validate flags malformed buffers") {
  GridSpec spec = GridSpec::make(10.0, 1.0);
  SemanticGrid g = SemanticGrid::binary(spec, {ClassLabel::Vehicle});
  g.validate();
  g.bits[5] = 2;
  CHECK_THROWS_AS(g.validate(), ValidationError);
  g.bits[5] = 1;
  g.validate();
  g.bits.pop_back();
  CHECK_THROWS_AS(g.validate(), ValidationError);

  SemanticGrid p = SemanticGrid::probability(spec, {ClassLabel::Vehicle});
  p.validate();
  p.probs[0] = 1.5f;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("class names round-trip and the drivable alias is accepted") {
  for (ClassLabel c : {ClassLabel::Vehicle, ClassLabel::Human, ClassLabel::DrivableArea})
    CHECK(class_from_name(class_name(c)) == c);
  CHECK(class_from_name("drivable") == ClassLabel::DrivableArea);
  CHECK(class_name(ClassLabel::DrivableArea) == "drivable_area");
  CHECK_THROWS_AS(class_from_name("bicycle"), ValidationError);
}

TEST_CASE("cloud container round-trips float32-exact values") {
  TempDir tmp;
  PointCloud cloud;
  cloud.points = {{1.5, -2.25, 0.125, 0.5},
                  {1000.0, -0.0625, 3.75, 1.0},
                  {0.0, 0.0, 0.0, 0.0}};
  auto file = tmp / "cloud.bevl";
  save_cloud(cloud, file);
  PointCloud loaded = load_cloud(file);
  REQUIRE(loaded.size() == cloud.size());
  for (size_t i = 0; i < cloud.size(); ++i) CHECK(loaded.points[i] == cloud.points[i]);
  CHECK(loaded.frame == Frame::Sensor);
  CHECK(load_cloud(file, Frame::Ego).frame == Frame::Ego);

  PointCloud empty;
  save_cloud(empty, tmp / "empty.bevl");
  CHECK(load_cloud(tmp / "empty.bevl").empty());
}

TEST_CASE("cloud container rejects missing, foreign and truncated files") {
  TempDir tmp;
  CHECK_THROWS_AS(load_cloud(tmp / "nope.bevl"), IoError);

  write_file_bytes(tmp / "foreign.bevl", "JUNKJUNKJUNKJUNKJUNK");
  CHECK_THROWS_AS(load_cloud(tmp / "foreign.bevl"), ValidationError);

  PointCloud cloud;
  cloud.points = {{1, 2, 3, 0}, {4, 5, 6, 0}};
  save_cloud(cloud, tmp / "ok.bevl");
  std::string bytes = read_file_bytes(tmp / "ok.bevl");
  write_file_bytes(tmp / "cut.bevl", bytes.substr(0, bytes.size() - 5));
  CHECK_THROWS_AS(load_cloud(tmp / "cut.bevl"), IoError);

  std::string short_header = bytes.substr(0, 10);
  write_file_bytes(tmp / "hdr.bevl", short_header);
  CHECK_THROWS(load_cloud(tmp / "hdr.bevl"));
}

namespace {

// A self-contained dataset directory: manifest + every file it references.
DatasetManifest write_fixture_dataset(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "samples" / "s0000");
  fs::create_directories(dir / "map");

  PointCloud cloud;
  cloud.points = {{5.0, 1.0, -1.5, 0.5}};
  save_cloud(cloud, dir / "samples" / "s0000" / "lidar.bevl");

  BoxAnnotation box;
  box.center = {10.0, 5.0, 0.9};
  box.length = 4.0;
  box.width = 2.0;
  box.height = 1.8;
  box.yaw = 0.5;
  box.label = ClassLabel::Vehicle;
  save_boxes({box}, dir / "samples" / "s0000" / "boxes.json");

  VectorMap vmap;
  vmap.polygons.push_back(
      {ClassLabel::DrivableArea,
       {{-50.0, -6.0}, {50.0, -6.0}, {50.0, 6.0}, {-50.0, 6.0}}});
  save_vector_map(vmap, dir / "map" / "map.geojson");

  DatasetManifest m;
  m.dataset_id = "fixture";
  m.map.kind = MapRef::Kind::Vector;
  m.map.path = "map/map.geojson";
  m.base_dir = dir;

  SampleRecord s;
  s.sample_id = "s0000";
  s.lidar_path = "samples/s0000/lidar.bevl";
  s.lidar_to_ego = Pose::from_yaw(0.25, {1.0, 0.0, 1.8});
  s.boxes_path = "samples/s0000/boxes.json";
  s.ego_to_map = Pose::from_yaw(-0.5, {20.0, 30.0, 0.0});
  m.samples.push_back(s);
  return m;
}

}  // namespace

TEST_CASE("manifest save/load is lossless and save(load(x)) is byte-identical") {
  TempDir tmp;
  DatasetManifest m = write_fixture_dataset(tmp.path);
  auto file = tmp / "manifest.json";
  save_manifest(m, file);

  DatasetManifest loaded = load_manifest(file);
  CHECK(loaded.dataset_id == "fixture");
  CHECK(loaded.map.kind == MapRef::Kind::Vector);
  REQUIRE(loaded.samples.size() == 1);
  const auto& s = loaded.samples[0];
  CHECK(s.sample_id == "s0000");
  CHECK(s.lidar_to_ego.translation().z() == doctest::Approx(1.8));
  CHECK((s.ego_to_map.rotation() - Pose::from_yaw(-0.5).rotation()).norm() < 1e-12);
  CHECK(loaded.resolve(s.lidar_path) == tmp.path / "samples/s0000/lidar.bevl");

  auto file2 = tmp / "manifest2.json";
  save_manifest(loaded, file2);
  CHECK(read_file_bytes(file) == read_file_bytes(file2));
}

TEST_CASE("manifest validation rejects duplicates, bad poses and missing files") {
  TempDir tmp;
  DatasetManifest m = write_fixture_dataset(tmp.path);

  SUBCASE("duplicate sample ids") {
    m.samples.push_back(m.samples[0]);
    save_manifest(m, tmp / "dup.json");
    CHECK_THROWS_AS(load_manifest(tmp / "dup.json"), ValidationError);
  }

  SUBCASE("missing referenced file") {
    m.samples[0].lidar_path = "samples/s0000/absent.bevl";
    save_manifest(m, tmp / "missing.json");
    CHECK_THROWS_AS(load_manifest(tmp / "missing.json"), IoError);
  }

  SUBCASE("non-normalized pose quaternion") {
    save_manifest(m, tmp / "badpose.json");
    std::string text = read_file_bytes(tmp / "badpose.json");
    // Corrupt the first unit quaternion [w,x,y,z] we can find.
    auto pos = text.find("\"rotation\"");
    REQUIRE(pos != std::string::npos);
    auto bracket = text.find('[', pos);
    text.replace(bracket + 1, 0, "9.0, ");
    auto comma = text.rfind(',', text.find(']', bracket));
    text.erase(comma, text.find(']', bracket) - comma);
    write_file_bytes(tmp / "badpose.json", text);
    CHECK_THROWS_AS(load_manifest(tmp / "badpose.json"), ValidationError);
  }

  SUBCASE("not json at all") {
    write_file_bytes(tmp / "garbage.json", "not json {{{");
    CHECK_THROWS_AS(load_manifest(tmp / "garbage.json"), ValidationError);
  }

  SUBCASE("absent manifest file") {
    CHECK_THROWS_AS(load_manifest(tmp / "never.json"), IoError);
  }
}

TEST_CASE("box annotations round-trip through json") {
  TempDir tmp;
  std::vector<BoxAnnotation> boxes(2);
  boxes[0].center = {1.0, -2.0, 0.5};
  boxes[0].length = 4.5;
  boxes[0].width = 1.75;
  boxes[0].height = 1.5;
  boxes[0].yaw = -1.25;
  boxes[0].label = ClassLabel::Vehicle;
  boxes[1].center = {-3.0, 7.0, 0.85};
  boxes[1].length = 0.8;
  boxes[1].width = 0.7;
  boxes[1].height = 1.7;
  boxes[1].yaw = 2.0;
  boxes[1].label = ClassLabel::Human;

  auto file = tmp / "boxes.json";
  save_boxes(boxes, file);
  auto loaded = load_boxes(file);
  REQUIRE(loaded.size() == 2);
  for (size_t i = 0; i < 2; ++i) {
    CHECK(loaded[i].center == boxes[i].center);
    CHECK(loaded[i].length == boxes[i].length);
    CHECK(loaded[i].width == boxes[i].width);
    CHECK(loaded[i].height == boxes[i].height);
    CHECK(loaded[i].yaw == boxes[i].yaw);
    CHECK(loaded[i].label == boxes[i].label);
  }

  CHECK_THROWS_AS(load_boxes(tmp / "absent.json"), IoError);
}

TEST_CASE("box validation bounds") {
  BoxAnnotation b;
  b.length = 4.0;
  b.width = 2.0;
  b.height = 1.5;
  b.yaw = 0.0;
  b.validate();
  b.yaw = M_PI;  // right-open interval
  CHECK_THROWS_AS(b.validate(), ValidationError);
  b.yaw = -M_PI;
  b.validate();
  b.width = 0.0;
  CHECK_THROWS_AS(b.validate(), ValidationError);
}
