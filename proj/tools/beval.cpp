// beval: command-line harness for the BEV cross-dataset evaluation library.
// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 internal error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "beval/cloud_file.hpp"
#include "beval/grid_file.hpp"
#include "beval/pipeline.hpp"
#include "beval/png_io.hpp"
#include "beval/resize_crop.hpp"
#include "beval/stats.hpp"
#include "beval/subsample.hpp"
#include "beval/synth.hpp"
#include "beval/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using namespace beval;

double parse_double(const std::string& text, const std::string& flag) {
  try {
    size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(flag + ": not a number: " + text);
  }
}

int parse_int(const std::string& text, const std::string& flag) {
  try {
    size_t pos = 0;
    int v = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(flag + ": not an integer: " + text);
  }
}

std::vector<ClassLabel> parse_classes(const std::string& csv) {
  std::vector<ClassLabel> classes;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    if (!token.empty()) classes.push_back(class_from_name(token));
  }
  if (classes.empty()) throw ValidationError("class list is empty: " + csv);
  return classes;
}

std::vector<fs::path> cloud_files(const fs::path& in) {
  if (fs::is_regular_file(in)) return {in};
  if (!fs::is_directory(in)) throw IoError("input not found: " + in.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(in))
    if (entry.is_regular_file() && entry.path().extension() == ".bevl")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ValidationError("no .bevl clouds under " + in.string());
  return files;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

// --- synth -----------------------------------------------------------------

struct SynthArgs {
  std::string out, profile, geometry, map_kind, layout, dataset_id;
  std::uint64_t seed = 7;
  int samples = 1, layers = 0, azimuth = 0, boxes_min = -1, boxes_max = -1, cameras = -1;
};

void run_synth(const SynthArgs& a, const CLI::App* cmd) {
  SynthConfig cfg = a.profile.empty() ? SynthConfig{} : SynthConfig::profile(a.profile);
  cfg.seed = a.seed;
  cfg.n_samples = a.samples;
  if (cmd->count("--layers")) cfg.lidar_layers = a.layers;
  if (cmd->count("--azimuth")) cfg.azimuth_steps = a.azimuth;
  if (cmd->count("--boxes-min")) cfg.n_boxes_min = a.boxes_min;
  if (cmd->count("--boxes-max")) cfg.n_boxes_max = a.boxes_max;
  if (cmd->count("--cameras")) cfg.n_cameras = a.cameras;
  if (!a.dataset_id.empty()) cfg.dataset_id = a.dataset_id;
  if (!a.geometry.empty()) {
    if (a.geometry == "1600x900") cfg.image_geometry = ImageGeometry::W1600x900;
    else if (a.geometry == "1920x1080") cfg.image_geometry = ImageGeometry::W1920x1080;
    else if (a.geometry == "1124x1024") cfg.image_geometry = ImageGeometry::W1124x1024;
    else throw ValidationError("unknown image geometry: " + a.geometry);
  }
  if (!a.map_kind.empty()) {
    if (a.map_kind == "vector") cfg.map_kind = MapKind::Vector;
    else if (a.map_kind == "raster") cfg.map_kind = MapKind::Raster;
    else throw ValidationError("unknown map kind: " + a.map_kind);
  }
  if (!a.layout.empty()) {
    if (a.layout == "cross") cfg.drivable_layout = DrivableLayout::Cross;
    else if (a.layout == "ring") cfg.drivable_layout = DrivableLayout::Ring;
    else if (a.layout == "grid") cfg.drivable_layout = DrivableLayout::Grid;
    else throw ValidationError("unknown drivable layout: " + a.layout);
  }
  SynthResult result = generate(cfg, a.out);
  std::cout << "wrote " << result.manifest.samples.size() << " samples ("
            << cfg.dataset_id << ") to " << a.out << "\n";
}

// --- subsample ---------------------------------------------------------------

struct SubsampleArgs {
  std::string in, out, theta_range;
  int theta_sectors = 32, phi_sectors = 1500;
};

void run_subsample(const SubsampleArgs& a) {
  SectorGridSpec spec;
  spec.theta_sectors = a.theta_sectors;
  spec.phi_sectors = a.phi_sectors;
  if (!a.theta_range.empty()) {
    auto comma = a.theta_range.find(',');
    if (comma == std::string::npos)
      throw ValidationError("--theta-range expects min,max in radians");
    spec.theta_mode = SectorGridSpec::ThetaRange::Fixed;
    spec.theta_min = parse_double(a.theta_range.substr(0, comma), "--theta-range");
    spec.theta_max = parse_double(a.theta_range.substr(comma + 1), "--theta-range");
  }
  spec.validate();

  std::vector<fs::path> inputs = cloud_files(a.in);
  const bool dir_mode = fs::is_directory(a.in);
  fs::path out_dir = dir_mode ? fs::path(a.out) : fs::path(a.out).parent_path();
  if (out_dir.empty()) out_dir = ".";
  fs::create_directories(out_dir);

  json meta;
  meta["pipeline_version"] = kPipelineVersion;
  meta["theta_sectors"] = spec.theta_sectors;
  meta["phi_sectors"] = spec.phi_sectors;
  meta["theta_mode"] =
      spec.theta_mode == SectorGridSpec::ThetaRange::Fixed ? "fixed" : "observed";
  if (spec.theta_mode == SectorGridSpec::ThetaRange::Fixed)
    meta["theta_range"] = {spec.theta_min, spec.theta_max};
  json files = json::array();

  for (const fs::path& file : inputs) {
    PointCloud cloud = load_cloud(file);
    PointCloud reduced = subsample(cloud, spec);
    fs::path out_path = dir_mode ? out_dir / file.filename() : fs::path(a.out);
    save_cloud(reduced, out_path);
    json entry;
    entry["file"] = file.filename().string();
    entry["input_points"] = cloud.size();
    entry["output_points"] = reduced.size();
    if (!cloud.empty()) {
      auto [lo, hi] = observed_theta_range(cloud);
      entry["observed_theta"] = {lo, hi};
    }
    files.push_back(entry);
  }
  meta["files"] = files;
  write_text(out_dir / "subsample_meta.json", meta.dump(2) + "\n");
  std::cout << "subsampled " << inputs.size() << " cloud(s) to " << a.out << "\n";
}

// --- harmonize-images --------------------------------------------------------

struct HarmonizeArgs {
  std::string in, manifest, out, target = "128x352", norm;
};

std::pair<int, int> parse_target(const std::string& target) {
  auto x = target.find('x');
  if (x == std::string::npos) throw ValidationError("--target expects HxW, e.g. 128x352");
  int h = parse_int(target.substr(0, x), "--target");
  int w = parse_int(target.substr(x + 1), "--target");
  if (h < 1 || w < 1) throw ValidationError("--target dimensions must be positive");
  return {h, w};
}

void run_harmonize(const HarmonizeArgs& a) {
  auto [target_h, target_w] = parse_target(a.target);
  fs::create_directories(a.out);

  json calib;
  calib["pipeline_version"] = kPipelineVersion;
  calib["target"] = {{"width", target_w}, {"height", target_h}};
  calib["interpolation"] = "bilinear";
  calib["aspect_preserving"] = true;
  if (!a.norm.empty()) {
    NormalizationParams norm = load_normalization(a.norm);
    calib["normalization"] = {{"mean", norm.mean}, {"std", norm.stddev}};
  }
  json images = json::array();

  auto process = [&](const fs::path& src, const fs::path& dst, const Intrinsics* k,
                     const std::string& sample_id, const std::string& camera) {
    ImageU8 img = load_png(src);
    ResizeCropPlan plan = plan_resize_crop(img.width, img.height, target_w, target_h);
    save_png(apply_resize_crop(img, plan), dst);
    json entry;
    if (!sample_id.empty()) entry["sample_id"] = sample_id;
    if (!camera.empty()) entry["camera"] = camera;
    entry["file"] = dst.filename().string();
    entry["source"] = {{"width", plan.src_width}, {"height", plan.src_height}};
    entry["scale"] = plan.scale;
    entry["crop"] = {plan.crop_x, plan.crop_y};
    if (k) {
      Intrinsics adj = adjust_intrinsics(*k, plan);
      entry["intrinsics"] = {{"fx", adj.fx}, {"fy", adj.fy}, {"cx", adj.cx},
                             {"cy", adj.cy}, {"width", adj.width}, {"height", adj.height}};
    }
    images.push_back(entry);
  };

  size_t count = 0;
  if (!a.manifest.empty()) {
    DatasetManifest m = load_manifest(a.manifest);
    for (const SampleRecord& sample : m.samples) {
      fs::path sdir = fs::path(a.out) / sample.sample_id;
      fs::create_directories(sdir);
      for (const CameraRecord& cam : sample.cameras) {
        process(m.resolve(cam.image_path), sdir / (cam.name + ".png"), &cam.intrinsics,
                sample.sample_id, cam.name);
        ++count;
      }
    }
  } else if (!a.in.empty()) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.in))
      if (entry.is_regular_file() && entry.path().extension() == ".png")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ValidationError("no .png images under " + a.in);
    for (const fs::path& file : files) {
      process(file, fs::path(a.out) / file.filename(), nullptr, "", "");
      ++count;
    }
  } else {
    throw ValidationError("harmonize-images needs --in or --manifest");
  }

  calib["images"] = images;
  write_text(fs::path(a.out) / "calib.json", calib.dump(2) + "\n");
  std::cout << "harmonized " << count << " image(s) to " << a.out << "\n";
}

// --- stats -------------------------------------------------------------------

struct StatsArgs {
  std::string in, out;
  double hist_bin = 2000.0;
};

void run_stats(const StatsArgs& a) {
  std::vector<fs::path> files = cloud_files(a.in);
  std::vector<int64_t> counts;
  json file_list = json::array();
  for (const fs::path& file : files) {
    PointCloud cloud = load_cloud(file);
    counts.push_back(static_cast<int64_t>(cloud.size()));
    file_list.push_back({{"file", file.filename().string()},
                         {"points", cloud.size()}});
  }
  CloudStats stats = compute_stats(counts, a.hist_bin);
  json out;
  out["count"] = stats.count;
  out["min"] = stats.min;
  out["max"] = stats.max;
  out["mean"] = stats.mean;
  out["median"] = stats.median;
  out["histogram"] = {{"bin_width", stats.histogram.bin_width},
                      {"first_bin", stats.histogram.first_bin},
                      {"counts", stats.histogram.counts}};
  out["files"] = file_list;
  std::string text = out.dump(2) + "\n";
  if (a.out.empty())
    std::cout << text;
  else
    write_text(a.out, text);
}

// --- gen-gt ------------------------------------------------------------------

struct GenGtArgs {
  std::string manifest, out, classes = "vehicle,human,drivable_area", palette;
  double extent = 100.0, resolution = 0.5;
  bool png = false;
};

void run_gen_gt(const GenGtArgs& a) {
  GridSpec spec = GridSpec::make(a.extent, a.resolution);
  std::vector<ClassLabel> classes = parse_classes(a.classes);
  LoadedDataset ds = load_dataset(a.manifest, a.palette);
  fs::create_directories(a.out);

  std::vector<std::string> warnings;
  for (const SampleRecord& sample : ds.manifest.samples) {
    SemanticGrid grid = generate_sample_gt(ds, sample, spec, classes, &warnings);
    save_grid(grid, fs::path(a.out) / (sample.sample_id + ".bevg"));
    if (a.png) save_grid_pngs(grid, a.out, sample.sample_id);
  }
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "wrote " << ds.manifest.samples.size() << " ground-truth grids to " << a.out
            << "\n";
}

// --- eval --------------------------------------------------------------------

struct EvalArgs {
  std::vector<std::string> manifests;
  std::vector<std::string> preds;  // model:train=dir | model:train=@oracle|@zeros|@noisy:p[:seed]
  std::string gt_dir, pred_dir, model = "model", train_id, test_id = "test";
  std::string classes = "vehicle,human,drivable_area";
  std::string out, csv, md, plot, cache, palette, missing = "fail";
  double threshold = 0.5, extent = 100.0, resolution = 0.5;
  int jobs = 1;
  bool per_sample_mean = false;
};

PredictionSource parse_pred_source(const std::string& text) {
  PredictionSource src;
  auto eq = text.find('=');
  if (eq == std::string::npos)
    throw ValidationError("--pred expects model:train=dir-or-builtin, got: " + text);
  std::string head = text.substr(0, eq);
  std::string spec = text.substr(eq + 1);
  auto colon = head.find(':');
  if (colon == std::string::npos) {
    src.train_id = head;
  } else {
    src.model = head.substr(0, colon);
    src.train_id = head.substr(colon + 1);
  }
  if (!spec.empty() && spec[0] == '@') {
    if (spec == "@oracle") {
      src.kind = PredictionSource::Kind::Oracle;
    } else if (spec == "@zeros") {
      src.kind = PredictionSource::Kind::Zeros;
    } else if (spec.rfind("@noisy", 0) == 0) {
      src.kind = PredictionSource::Kind::Noisy;
      std::string rest = spec.substr(6);  // ":p[:seed]"
      if (!rest.empty() && rest[0] == ':') {
        auto second = rest.find(':', 1);
        src.flip_prob = parse_double(
            second == std::string::npos ? rest.substr(1) : rest.substr(1, second - 1),
            "--pred @noisy");
        if (second != std::string::npos)
          src.noise_seed = static_cast<std::uint64_t>(
              parse_double(rest.substr(second + 1), "--pred @noisy seed"));
      }
    } else {
      throw ValidationError("unknown builtin predictor: " + spec);
    }
  } else {
    src.kind = PredictionSource::Kind::Directory;
    src.dir = spec;
  }
  return src;
}

// Grid-directory evaluation without manifests: GT grids and prediction grids
// share sample stems.
EvalReport eval_grid_dirs(const EvalArgs& a) {
  GridSpec spec = GridSpec::make(a.extent, a.resolution);
  std::vector<ClassLabel> classes = parse_classes(a.classes);
  std::vector<std::string> stems;
  for (const auto& entry : fs::directory_iterator(a.gt_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".bevg")
      stems.push_back(entry.path().stem().string());
  std::sort(stems.begin(), stems.end());
  if (stems.empty()) throw ValidationError("no .bevg grids under " + a.gt_dir);

  EvalReport report;
  report.metadata.spec = spec;
  report.metadata.classes = classes;
  report.metadata.threshold = a.threshold;
  report.metadata.aggregation = "dataset";
  report.metadata.pipeline_version = kPipelineVersion;

  IoUAccumulator acc = IoUAccumulator::make(classes);
  size_t evaluated = 0;
  for (const std::string& stem : stems) {
    SemanticGrid gt = load_grid(fs::path(a.gt_dir) / (stem + ".bevg"), spec.extent);
    fs::path container = fs::path(a.pred_dir) / (stem + ".bevg");
    SemanticGrid pred;
    if (fs::exists(container)) {
      pred = load_grid(container, spec.extent);
    } else if (fs::exists(fs::path(a.pred_dir) /
                          (stem + "_" + class_name(classes.front()) + ".png"))) {
      pred = load_grid_from_pngs(a.pred_dir, stem, classes, spec.extent);
    } else if (a.missing == "skip") {
      report.warnings.push_back("missing prediction for " + stem + "; sample skipped");
      continue;
    } else {
      throw ValidationError("missing prediction for " + stem + " in " + a.pred_dir);
    }
    acc.accumulate(binarize(pred, a.threshold), gt);
    ++evaluated;
  }
  report.metadata.sample_counts[a.test_id] = evaluated;

  std::vector<std::optional<double>> per_class = acc.finalize();
  std::string train = a.train_id.empty() ? a.test_id : a.train_id;
  for (size_t c = 0; c < classes.size(); ++c) {
    if (!per_class[c]) {
      report.warnings.push_back("IoU undefined for class " + class_name(classes[c]) +
                                "; cell excluded");
      continue;
    }
    CrossEvalCell cell;
    cell.model = a.model;
    cell.train_dataset_id = train;
    cell.test_dataset_id = a.test_id;
    cell.class_label = classes[c];
    cell.iou = *per_class[c];
    report.cells.push_back(cell);
  }
  compute_deltas(report);
  return report;
}

void run_eval(const EvalArgs& a) {
  EvalReport report;
  if (!a.gt_dir.empty()) {
    if (a.pred_dir.empty()) throw ValidationError("--gt requires --pred-dir");
    report = eval_grid_dirs(a);
  } else {
    RunConfig cfg;
    for (const std::string& m : a.manifests) cfg.manifests.push_back(m);
    for (const std::string& p : a.preds) cfg.predictions.push_back(parse_pred_source(p));
    cfg.spec = GridSpec::make(a.extent, a.resolution);
    cfg.classes = parse_classes(a.classes);
    cfg.threshold = a.threshold;
    cfg.cache_dir = a.cache;
    cfg.palette = a.palette;
    if (a.missing == "fail") cfg.missing = MissingPolicy::Fail;
    else if (a.missing == "skip") cfg.missing = MissingPolicy::SkipWarn;
    else throw ValidationError("--missing expects fail or skip");
    cfg.jobs = a.jobs;
    cfg.per_sample_mean = a.per_sample_mean;
    report = run_pipeline(cfg);
  }
  ReportOutputs outputs{a.out, a.csv, a.md, a.plot};
  if (outputs.json.empty() && outputs.csv.empty() && outputs.markdown.empty() &&
      outputs.plot_csv.empty())
    throw ValidationError("eval: no output requested (--out/--csv/--md/--plot)");
  emit_report(report, outputs);
  std::cout << "evaluated " << report.cells.size() << " report cell(s)\n";
}

// --- report ------------------------------------------------------------------

struct ReportArgs {
  std::string cross, baselines, out, csv, plot, json_out;
};

void run_report(const ReportArgs& a) {
  EvalReport cross = load_report(a.cross);
  if (!a.baselines.empty()) {
    EvalReport base = load_report(a.baselines);
    compute_deltas(cross, base);
    // Show baseline columns next to the starred ones, as in the published
    // table layout; skip triples the cross report already carries.
    for (const CrossEvalCell& cell : base.cells) {
      bool present = std::any_of(cross.cells.begin(), cross.cells.end(), [&](const auto& c) {
        return c.model == cell.model && c.train_dataset_id == cell.train_dataset_id &&
               c.test_dataset_id == cell.test_dataset_id && c.class_label == cell.class_label;
      });
      if (!present) cross.cells.push_back(cell);
    }
    for (const std::string& w : base.warnings) cross.warnings.push_back(w);
  }
  cross.validate();
  ReportOutputs outputs{a.json_out, a.csv, a.out, a.plot};
  if (outputs.markdown.empty() && outputs.csv.empty() && outputs.json.empty() &&
      outputs.plot_csv.empty())
    throw ValidationError("report: no output requested (--out/--csv/--json/--plot)");
  emit_report(cross, outputs);
  std::cout << "wrote report with " << cross.cells.size() << " cell(s)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beval: BEV semantic-grid cross-dataset evaluation toolkit"};
  app.set_config("--config", "", "TOML-like config file; sections named after subcommands");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kPipelineVersion));

  SynthArgs synth_args;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a deterministic synthetic dataset");
  synth_cmd->add_option("--out", synth_args.out, "Output dataset directory")->required();
  synth_cmd->add_option("--seed", synth_args.seed, "Generator seed")->envname("BEVAL_SEED");
  synth_cmd->add_option("--samples", synth_args.samples, "Number of samples")
      ->envname("BEVAL_SAMPLES");
  synth_cmd->add_option("--profile", synth_args.profile,
                        "nuscenes-like (32x1500, vector map) or wovenplanet-like (64x2200, raster map)");
  synth_cmd->add_option("--layers", synth_args.layers, "LiDAR layers");
  synth_cmd->add_option("--azimuth", synth_args.azimuth, "Azimuth steps per layer");
  synth_cmd->add_option("--geometry", synth_args.geometry, "Camera WxH: 1600x900|1920x1080|1124x1024");
  synth_cmd->add_option("--map-kind", synth_args.map_kind, "vector|raster");
  synth_cmd->add_option("--layout", synth_args.layout, "Drivable layout: cross|ring|grid");
  synth_cmd->add_option("--boxes-min", synth_args.boxes_min, "Min boxes per sample");
  synth_cmd->add_option("--boxes-max", synth_args.boxes_max, "Max boxes per sample");
  synth_cmd->add_option("--cameras", synth_args.cameras, "Cameras per sample (0-6)");
  synth_cmd->add_option("--dataset-id", synth_args.dataset_id, "Dataset id in the manifest");
  synth_cmd->callback([&] { run_synth(synth_args, synth_cmd); });

  SubsampleArgs sub_args;
  CLI::App* sub_cmd =
      app.add_subcommand("subsample", "Sector-based spherical subsampling of LiDAR clouds");
  sub_cmd->add_option("--in", sub_args.in, ".bevl file or directory")->required();
  sub_cmd->add_option("--out", sub_args.out, "Output file or directory")->required();
  sub_cmd->add_option("--theta-sectors", sub_args.theta_sectors, "Elevation sectors");
  sub_cmd->add_option("--phi-sectors", sub_args.phi_sectors, "Azimuth sectors");
  sub_cmd->add_option("--theta-range", sub_args.theta_range,
                      "Fixed elevation range min,max in radians (default: observed)");
  sub_cmd->callback([&] { run_subsample(sub_args); });

  HarmonizeArgs harm_args;
  CLI::App* harm_cmd = app.add_subcommand(
      "harmonize-images", "Resize + center-crop images and adjust intrinsics");
  harm_cmd->add_option("--in", harm_args.in, "Directory of PNG images");
  harm_cmd->add_option("--manifest", harm_args.manifest,
                       "Dataset manifest (uses its cameras and intrinsics)");
  harm_cmd->add_option("--out", harm_args.out, "Output directory")->required();
  harm_cmd->add_option("--target", harm_args.target, "Target size HxW (default 128x352)");
  harm_cmd->add_option("--norm", harm_args.norm,
                       "Normalization constants JSON to record in calib.json")
      ->envname("BEVAL_NORM");
  harm_cmd->callback([&] { run_harmonize(harm_args); });

  StatsArgs stats_args;
  CLI::App* stats_cmd =
      app.add_subcommand("stats", "Point-count statistics over a directory of clouds");
  stats_cmd->add_option("--in", stats_args.in, ".bevl file or directory")->required();
  stats_cmd->add_option("--hist-bin", stats_args.hist_bin, "Histogram bin width (points)");
  stats_cmd->add_option("--out", stats_args.out, "Output JSON (default: stdout)");
  stats_cmd->callback([&] { run_stats(stats_args); });

  GenGtArgs gt_args;
  CLI::App* gt_cmd = app.add_subcommand("gen-gt", "Generate BEV ground-truth grids");
  gt_cmd->add_option("--manifest", gt_args.manifest, "Dataset manifest")->required();
  gt_cmd->add_option("--out", gt_args.out, "Output grid directory")->required();
  gt_cmd->add_option("--classes", gt_args.classes, "Comma-separated class list");
  gt_cmd->add_option("--palette", gt_args.palette, "Raster-map color filter JSON")
      ->envname("BEVAL_PALETTE");
  gt_cmd->add_option("--extent", gt_args.extent, "Grid extent in meters");
  gt_cmd->add_option("--resolution", gt_args.resolution, "Cell size in meters");
  gt_cmd->add_flag("--png", gt_args.png, "Also write per-class PNG planes");
  gt_cmd->callback([&] { run_gen_gt(gt_args); });

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate prediction grids against ground truth");
  eval_cmd->add_option("--manifest", eval_args.manifests, "Test dataset manifest (repeatable)");
  eval_cmd->add_option("--pred", eval_args.preds,
                       "model:train=DIR or model:train=@oracle|@zeros|@noisy:p[:seed] (repeatable)");
  eval_cmd->add_option("--gt", eval_args.gt_dir, "Grid-directory mode: ground-truth directory");
  eval_cmd->add_option("--pred-dir", eval_args.pred_dir, "Grid-directory mode: prediction directory");
  eval_cmd->add_option("--model", eval_args.model, "Grid-directory mode: model tag");
  eval_cmd->add_option("--train-id", eval_args.train_id, "Grid-directory mode: training dataset id");
  eval_cmd->add_option("--test-id", eval_args.test_id, "Grid-directory mode: test dataset id");
  eval_cmd->add_option("--classes", eval_args.classes, "Comma-separated class list");
  eval_cmd->add_option("--threshold", eval_args.threshold, "Probability binarization threshold")
      ->envname("BEVAL_THRESHOLD");
  eval_cmd->add_option("--extent", eval_args.extent, "Grid extent in meters");
  eval_cmd->add_option("--resolution", eval_args.resolution, "Cell size in meters");
  eval_cmd->add_option("--cache", eval_args.cache, "Ground-truth cache directory")
      ->envname("BEVAL_CACHE");
  eval_cmd->add_option("--palette", eval_args.palette, "Raster-map color filter JSON")
      ->envname("BEVAL_PALETTE");
  eval_cmd->add_option("--missing", eval_args.missing, "Missing-prediction policy: fail|skip");
  eval_cmd->add_option("--jobs", eval_args.jobs, "Worker threads")->envname("BEVAL_JOBS");
  eval_cmd->add_flag("--per-sample-mean", eval_args.per_sample_mean,
                     "Mean of per-sample IoUs instead of pooled cell counts");
  eval_cmd->add_option("--out", eval_args.out, "Report JSON path");
  eval_cmd->add_option("--csv", eval_args.csv, "Report CSV path");
  eval_cmd->add_option("--md", eval_args.md, "Report Markdown path");
  eval_cmd->add_option("--plot", eval_args.plot, "Plot-ready CSV path");
  eval_cmd->callback([&] { run_eval(eval_args); });

  ReportArgs report_args;
  CLI::App* report_cmd =
      app.add_subcommand("report", "Render a saved report; optionally annotate against baselines");
  report_cmd->add_option("--cross", report_args.cross, "Report JSON to render")->required();
  report_cmd->add_option("--baselines", report_args.baselines,
                         "Baseline report JSON for delta annotations");
  report_cmd->add_option("--out", report_args.out, "Markdown output path");
  report_cmd->add_option("--csv", report_args.csv, "CSV output path");
  report_cmd->add_option("--json", report_args.json_out, "JSON output path");
  report_cmd->add_option("--plot", report_args.plot, "Plot-ready CSV output path");
  report_cmd->callback([&] { run_report(report_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
