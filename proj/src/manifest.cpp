#include "beval/manifest.hpp"

#include <fstream>

#include "json.hpp"

namespace beval {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json pose_to_json(const Pose& p) {
  const auto& q = p.quaternion();
  const auto& t = p.translation();
  return {{"rotation", {q.w(), q.x(), q.y(), q.z()}},
          {"translation", {t.x(), t.y(), t.z()}}};
}

Pose pose_from_json(const json& j) {
  auto r = j.at("rotation");
  auto t = j.at("translation");
  Pose p(Eigen::Quaterniond(r.at(0).get<double>(), r.at(1).get<double>(),
                            r.at(2).get<double>(), r.at(3).get<double>()),
         Eigen::Vector3d(t.at(0).get<double>(), t.at(1).get<double>(), t.at(2).get<double>()));
  if (!p.is_valid()) throw ValidationError("manifest: pose rotation is not proper orthonormal");
  return p;
}

json intrinsics_to_json(const Intrinsics& k) {
  return {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy},
          {"width", k.width}, {"height", k.height}};
}

Intrinsics intrinsics_from_json(const json& j) {
  Intrinsics k{j.at("fx").get<double>(), j.at("fy").get<double>(),
               j.at("cx").get<double>(), j.at("cy").get<double>(),
               j.at("width").get<int>(), j.at("height").get<int>()};
  k.validate();
  return k;
}

void require_file(const fs::path& base, const std::string& rel, const char* what) {
  if (rel.empty()) throw ValidationError(std::string("manifest: empty ") + what + " path");
  fs::path p = base / rel;
  if (!fs::exists(p))
    throw IoError(std::string("manifest: missing ") + what + " file: " + p.string());
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("parse error in " + path.string() + ": " + e.what());
  }
  return j;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

DatasetManifest load_manifest(const fs::path& path) {
  json j = read_json_file(path);
  DatasetManifest m;
  m.base_dir = path.parent_path();
  try {
    m.dataset_id = j.at("dataset_id").get<std::string>();
    const json& jm = j.at("map");
    std::string kind = jm.at("kind").get<std::string>();
    if (kind == "vector") {
      m.map.kind = MapRef::Kind::Vector;
    } else if (kind == "raster") {
      m.map.kind = MapRef::Kind::Raster;
      m.map.meta_path = jm.at("meta").get<std::string>();
    } else {
      throw ValidationError("manifest: unknown map kind: " + kind);
    }
    m.map.path = jm.at("path").get<std::string>();

    for (const json& js : j.at("samples")) {
      SampleRecord s;
      s.sample_id = js.at("sample_id").get<std::string>();
      s.lidar_path = js.at("lidar").at("path").get<std::string>();
      s.lidar_to_ego = pose_from_json(js.at("lidar").at("pose"));
      s.boxes_path = js.at("boxes").get<std::string>();
      s.ego_to_map = pose_from_json(js.at("ego_pose"));
      for (const json& jc : js.at("cameras")) {
        CameraRecord c;
        c.name = jc.at("name").get<std::string>();
        c.image_path = jc.at("image").get<std::string>();
        c.intrinsics = intrinsics_from_json(jc.at("intrinsics"));
        c.sensor_to_ego = pose_from_json(jc.at("pose"));
        s.cameras.push_back(std::move(c));
      }
      m.samples.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw ValidationError("manifest schema error in " + path.string() + ": " + e.what());
  }

  std::vector<std::string> ids;
  for (const auto& s : m.samples) ids.push_back(s.sample_id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw ValidationError("manifest: duplicate sample_id: " +
                          *std::adjacent_find(ids.begin(), ids.end()));

  require_file(m.base_dir, m.map.path, "map");
  if (m.map.kind == MapRef::Kind::Raster) require_file(m.base_dir, m.map.meta_path, "map meta");
  for (const auto& s : m.samples) {
    require_file(m.base_dir, s.lidar_path, "lidar");
    require_file(m.base_dir, s.boxes_path, "boxes");
    for (const auto& c : s.cameras) require_file(m.base_dir, c.image_path, "image");
  }
  return m;
}

void save_manifest(const DatasetManifest& m, const fs::path& path) {
  json j;
  j["dataset_id"] = m.dataset_id;
  json jm;
  jm["kind"] = m.map.kind == MapRef::Kind::Vector ? "vector" : "raster";
  jm["path"] = m.map.path;
  if (m.map.kind == MapRef::Kind::Raster) jm["meta"] = m.map.meta_path;
  j["map"] = jm;
  j["samples"] = json::array();
  for (const auto& s : m.samples) {
    json js;
    js["sample_id"] = s.sample_id;
    js["lidar"] = {{"path", s.lidar_path}, {"pose", pose_to_json(s.lidar_to_ego)}};
    js["boxes"] = s.boxes_path;
    js["ego_pose"] = pose_to_json(s.ego_to_map);
    js["cameras"] = json::array();
    for (const auto& c : s.cameras) {
      js["cameras"].push_back({{"name", c.name},
                               {"image", c.image_path},
                               {"intrinsics", intrinsics_to_json(c.intrinsics)},
                               {"pose", pose_to_json(c.sensor_to_ego)}});
    }
    j["samples"].push_back(std::move(js));
  }
  write_text_file(path, j.dump(2) + "\n");
}

std::vector<BoxAnnotation> load_boxes(const fs::path& path) {
  json j = read_json_file(path);
  std::vector<BoxAnnotation> boxes;
  try {
    for (const json& jb : j) {
      BoxAnnotation b;
      b.center = {jb.at("center").at(0).get<double>(), jb.at("center").at(1).get<double>(),
                  jb.at("center").at(2).get<double>()};
      b.length = jb.at("size").at(0).get<double>();
      b.width = jb.at("size").at(1).get<double>();
      b.height = jb.at("size").at(2).get<double>();
      b.yaw = jb.at("yaw").get<double>();
      b.label = class_from_name(jb.at("class").get<std::string>());
      b.validate();
      boxes.push_back(b);
    }
  } catch (const json::exception& e) {
    throw ValidationError("boxes schema error in " + path.string() + ": " + e.what());
  }
  return boxes;
}

void save_boxes(const std::vector<BoxAnnotation>& boxes, const fs::path& path) {
  json j = json::array();
  for (const auto& b : boxes) {
    j.push_back({{"center", {b.center.x(), b.center.y(), b.center.z()}},
                 {"size", {b.length, b.width, b.height}},
                 {"yaw", b.yaw},
                 {"class", class_name(b.label)}});
  }
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace beval
