#include <algorithm>
#include <cmath>

#include "beval/grid_file.hpp"
#include "beval/pipeline.hpp"
#include "beval/synth.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace beval;
namespace fs = std::filesystem;

namespace {

const GridSpec kSpec = GridSpec::make(100.0, 0.5);
const std::vector<ClassLabel> kAll = {ClassLabel::Vehicle, ClassLabel::Human,
                                      ClassLabel::DrivableArea};

SynthConfig small_dataset_config(uint64_t seed, const std::string& id, int samples = 2) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.n_samples = samples;
  cfg.lidar_layers = 4;
  cfg.azimuth_steps = 24;
  cfg.n_cameras = 0;
  cfg.n_boxes_min = 4;
  cfg.n_boxes_max = 6;
  cfg.dataset_id = id;
  return cfg;
}

PredictionSource oracle_source(const std::string& model, const std::string& train) {
  PredictionSource s;
  s.model = model;
  s.train_id = train;
  s.kind = PredictionSource::Kind::Oracle;
  return s;
}

const CrossEvalCell* find_cell(const EvalReport& r, const std::string& model,
                               const std::string& test, ClassLabel label) {
  for (const auto& c : r.cells)
    if (c.model == model && c.test_dataset_id == test && c.class_label == label) return &c;
  return nullptr;
}

// Writes one prediction grid per sample into dir, mirroring the dataset GT.
void write_gt_predictions(const LoadedDataset& ds, const fs::path& dir,
                          const std::vector<ClassLabel>& classes) {
  fs::create_directories(dir);
  for (const SampleRecord& sample : ds.manifest.samples) {
    SemanticGrid gt = generate_sample_gt(ds, sample, kSpec, classes);
    save_grid(gt, dir / (sample.sample_id + ".bevg"));
  }
}

}  // namespace

TEST_CASE("oracle predictions score a perfect IoU on every dataset and class") {
  TempDir data;
  generate(small_dataset_config(42, "alpha"), data.path);

  RunConfig cfg;
  cfg.manifests = {data / "manifest.json"};
  cfg.predictions = {oracle_source("oracle", "alpha")};
  EvalReport report = run_pipeline(cfg);
  report.validate();

  CHECK(report.metadata.sample_counts.at("alpha") == 2);
  CHECK(report.metadata.aggregation == "dataset");
  for (ClassLabel label : kAll) {
    const CrossEvalCell* cell = find_cell(report, "oracle", "alpha", label);
    if (cell) CHECK(cell->iou == 1.0);
  }
  // drivable area is always in view, so that cell must exist
  REQUIRE(find_cell(report, "oracle", "alpha", ClassLabel::DrivableArea) != nullptr);
}

TEST_CASE("all-zero predictions score zero wherever ground truth is populated") {
  TempDir data;
  generate(small_dataset_config(43, "alpha"), data.path);

  PredictionSource zeros;
  zeros.model = "zeros";
  zeros.train_id = "alpha";
  zeros.kind = PredictionSource::Kind::Zeros;

  RunConfig cfg;
  cfg.manifests = {data / "manifest.json"};
  cfg.predictions = {zeros};
  EvalReport report = run_pipeline(cfg);

  const CrossEvalCell* drivable = find_cell(report, "zeros", "alpha", ClassLabel::DrivableArea);
  REQUIRE(drivable != nullptr);
  CHECK(drivable->iou == 0.0);
  for (const auto& c : report.cells) CHECK(c.iou == 0.0);
}

TEST_CASE("directory predictions: bevg containers and png planes both load") {
  TempDir data, preds_bevg, preds_png;
  generate(small_dataset_config(44, "alpha"), data.path);
  LoadedDataset ds = load_dataset(data / "manifest.json");

  write_gt_predictions(ds, preds_bevg.path, kAll);
  for (const SampleRecord& sample : ds.manifest.samples) {
    SemanticGrid gt = generate_sample_gt(ds, sample, kSpec, kAll);
    save_grid_pngs(gt, preds_png.path, sample.sample_id);
  }

  for (const fs::path& dir : {preds_bevg.path, preds_png.path}) {
    PredictionSource src;
    src.model = "replay";
    src.train_id = "alpha";
    src.kind = PredictionSource::Kind::Directory;
    src.dir = dir;

    RunConfig cfg;
    cfg.manifests = {data / "manifest.json"};
    cfg.predictions = {src};
    EvalReport report = run_pipeline(cfg);
    for (const auto& c : report.cells) CHECK(c.iou == 1.0);
    REQUIRE_FALSE(report.cells.empty());

    bool notice = false;
    for (const auto& w : report.warnings)
      if (w.find("already binary") != std::string::npos) notice = true;
    CHECK(notice);
  }
}

TEST_CASE("missing prediction files: fail policy throws, skip policy warns and continues") {
  TempDir data, preds;
  generate(small_dataset_config(45, "alpha"), data.path);
  LoadedDataset ds = load_dataset(data / "manifest.json");
  write_gt_predictions(ds, preds.path, kAll);
  fs::remove(preds / "s0001.bevg");

  PredictionSource src;
  src.model = "replay";
  src.train_id = "alpha";
  src.kind = PredictionSource::Kind::Directory;
  src.dir = preds.path;

  RunConfig cfg;
  cfg.manifests = {data / "manifest.json"};
  cfg.predictions = {src};

  SUBCASE("fail") {
    cfg.missing = MissingPolicy::Fail;
    CHECK_THROWS_AS(run_pipeline(cfg), ValidationError);
  }

  SUBCASE("skip and warn") {
    cfg.missing = MissingPolicy::SkipWarn;
    EvalReport report = run_pipeline(cfg);
    bool warned = false;
    for (const auto& w : report.warnings)
      if (w.find("missing prediction") != std::string::npos &&
          w.find("s0001") != std::string::npos)
        warned = true;
    CHECK(warned);
    // the surviving sample still evaluates perfectly
    for (const auto& c : report.cells) CHECK(c.iou == 1.0);
    REQUIRE_FALSE(report.cells.empty());
  }
}

TEST_CASE("ground-truth cache is written once and read back on later runs") {
  TempDir data, preds, cache;
  generate(small_dataset_config(46, "alpha"), data.path);
  LoadedDataset ds = load_dataset(data / "manifest.json");
  write_gt_predictions(ds, preds.path, kAll);

  PredictionSource src;
  src.model = "replay";
  src.train_id = "alpha";
  src.kind = PredictionSource::Kind::Directory;
  src.dir = preds.path;

  RunConfig cfg;
  cfg.manifests = {data / "manifest.json"};
  cfg.predictions = {src};
  cfg.cache_dir = cache.path;

  EvalReport cold = run_pipeline(cfg);
  for (const auto& c : cold.cells) CHECK(c.iou == 1.0);

  std::string key = gt_cache_key(data / "manifest.json", kSpec, kAll);
  fs::path entry = cache / key;
  REQUIRE(fs::exists(entry / "s0000.bevg"));
  REQUIRE(fs::exists(entry / "s0001.bevg"));

  EvalReport warm = run_pipeline(cfg);
  CHECK(report_to_json(warm) == report_to_json(cold));

  // Prove the cache is actually read: tamper with one cached grid and watch
  // the previously perfect score drop for that dataset.
  SemanticGrid tampered = load_grid(entry / "s0000.bevg");
  size_t drivable = tampered.plane_of(ClassLabel::DrivableArea) * tampered.plane_size();
  for (size_t i = 0; i < 2000; ++i) tampered.bits[drivable + i] ^= 1;
  save_grid(tampered, entry / "s0000.bevg");

  EvalReport poisoned = run_pipeline(cfg);
  const CrossEvalCell* cell = find_cell(poisoned, "replay", "alpha", ClassLabel::DrivableArea);
  REQUIRE(cell != nullptr);
  CHECK(cell->iou < 1.0);
}

TEST_CASE("cache keys separate specs, class lists and manifests") {
  TempDir data, data2;
  generate(small_dataset_config(47, "alpha"), data.path);
  generate(small_dataset_config(48, "beta"), data2.path);

  std::string base = gt_cache_key(data / "manifest.json", kSpec, kAll);
  CHECK(base == gt_cache_key(data / "manifest.json", kSpec, kAll));
  CHECK(base.size() == 16);
  CHECK(base != gt_cache_key(data / "manifest.json", GridSpec::make(100.0, 1.0), kAll));
  CHECK(base != gt_cache_key(data / "manifest.json", kSpec, {ClassLabel::Vehicle}));
  CHECK(base != gt_cache_key(data2 / "manifest.json", kSpec, kAll));
}

TEST_CASE("reports are byte-identical across worker counts") {
  TempDir data_a, data_b;
  generate(small_dataset_config(50, "alpha", 4), data_a.path);
  SynthConfig beta = small_dataset_config(51, "beta", 3);
  beta.map_kind = MapKind::Raster;
  beta.drivable_layout = DrivableLayout::Ring;
  generate(beta, data_b.path);

  PredictionSource noisy;
  noisy.model = "noisy";
  noisy.train_id = "alpha";
  noisy.kind = PredictionSource::Kind::Noisy;
  noisy.flip_prob = 0.3;
  noisy.noise_seed = 777;

  RunConfig cfg;
  cfg.manifests = {data_a / "manifest.json", data_b / "manifest.json"};
  cfg.predictions = {oracle_source("oracle", "alpha"), noisy};

  cfg.jobs = 1;
  std::string serial = report_to_json(run_pipeline(cfg));
  cfg.jobs = 4;
  std::string parallel = report_to_json(run_pipeline(cfg));
  CHECK(serial == parallel);

  cfg.per_sample_mean = true;
  cfg.jobs = 1;
  std::string mean_serial = report_to_json(run_pipeline(cfg));
  cfg.jobs = 4;
  std::string mean_parallel = report_to_json(run_pipeline(cfg));
  CHECK(mean_serial == mean_parallel);
  CHECK(mean_serial != serial);  // aggregation mode is recorded and differs
}

TEST_CASE("noisy predictions are reproducible and sensitive to the seed") {
  TempDir data;
  generate(small_dataset_config(52, "alpha"), data.path);

  PredictionSource noisy;
  noisy.model = "noisy";
  noisy.train_id = "alpha";
  noisy.kind = PredictionSource::Kind::Noisy;
  noisy.flip_prob = 0.1;
  noisy.noise_seed = 1;

  RunConfig cfg;
  cfg.manifests = {data / "manifest.json"};
  cfg.predictions = {noisy};

  std::string first = report_to_json(run_pipeline(cfg));
  std::string second = report_to_json(run_pipeline(cfg));
  CHECK(first == second);

  cfg.predictions[0].noise_seed = 2;
  CHECK(report_to_json(run_pipeline(cfg)) != first);
}

TEST_CASE("per-sample-mean averages sample IoUs instead of pooling counts") {
  TempDir data, preds;
  SynthConfig synth = small_dataset_config(53, "alpha");
  synth.n_boxes_min = 0;
  synth.n_boxes_max = 0;  // drivable-only scenario
  generate(synth, data.path);
  LoadedDataset ds = load_dataset(data / "manifest.json");
  REQUIRE(ds.manifest.samples.size() == 2);

  std::vector<ClassLabel> classes = {ClassLabel::DrivableArea};
  SemanticGrid gt0 = generate_sample_gt(ds, ds.manifest.samples[0], kSpec, classes);
  SemanticGrid gt1 = generate_sample_gt(ds, ds.manifest.samples[1], kSpec, classes);

  // sample 0 prediction = ground truth (IoU 1), sample 1 prediction = empty (IoU 0)
  fs::create_directories(preds.path);
  save_grid(gt0, preds / (ds.manifest.samples[0].sample_id + ".bevg"));
  SemanticGrid empty = SemanticGrid::binary(kSpec, classes);
  save_grid(empty, preds / (ds.manifest.samples[1].sample_id + ".bevg"));

  PredictionSource src;
  src.model = "half";
  src.train_id = "alpha";
  src.kind = PredictionSource::Kind::Directory;
  src.dir = preds.path;

  RunConfig cfg;
  cfg.manifests = {data / "manifest.json"};
  cfg.predictions = {src};
  cfg.classes = classes;

  cfg.per_sample_mean = true;
  EvalReport mean_report = run_pipeline(cfg);
  const CrossEvalCell* mean_cell =
      find_cell(mean_report, "half", "alpha", ClassLabel::DrivableArea);
  REQUIRE(mean_cell != nullptr);
  CHECK(mean_cell->iou == doctest::Approx(0.5));  // (1.0 + 0.0) / 2

  cfg.per_sample_mean = false;
  EvalReport pooled_report = run_pipeline(cfg);
  const CrossEvalCell* pooled_cell =
      find_cell(pooled_report, "half", "alpha", ClassLabel::DrivableArea);
  REQUIRE(pooled_cell != nullptr);
  auto count_on = [](const SemanticGrid& g) {
    return std::count(g.bits.begin(), g.bits.end(), 1);
  };
  double expect_pooled = double(count_on(gt0)) / double(count_on(gt0) + count_on(gt1));
  CHECK(pooled_cell->iou == doctest::Approx(expect_pooled));
}

TEST_CASE("classes with empty ground truth and empty predictions are excluded with a warning") {
  TempDir data;
  SynthConfig synth = small_dataset_config(54, "alpha");
  synth.n_boxes_min = 0;
  synth.n_boxes_max = 0;
  generate(synth, data.path);

  PredictionSource zeros;
  zeros.model = "zeros";
  zeros.train_id = "alpha";
  zeros.kind = PredictionSource::Kind::Zeros;

  RunConfig cfg;
  cfg.manifests = {data / "manifest.json"};
  cfg.predictions = {zeros};
  cfg.classes = {ClassLabel::Vehicle, ClassLabel::Human};
  EvalReport report = run_pipeline(cfg);
  CHECK(report.cells.empty());
  bool undefined_warned = false;
  for (const auto& w : report.warnings)
    if (w.find("undefined") != std::string::npos) undefined_warned = true;
  CHECK(undefined_warned);
}

TEST_CASE("cross-dataset deltas are attached against same-dataset baselines") {
  TempDir data_a, data_b;
  generate(small_dataset_config(60, "alpha"), data_a.path);
  generate(small_dataset_config(61, "beta"), data_b.path);

  PredictionSource noisy_a;
  noisy_a.model = "m";
  noisy_a.train_id = "alpha";
  noisy_a.kind = PredictionSource::Kind::Noisy;
  noisy_a.flip_prob = 0.05;
  noisy_a.noise_seed = 5;
  PredictionSource oracle_b = oracle_source("m2", "beta");

  RunConfig cfg;
  cfg.manifests = {data_a / "manifest.json", data_b / "manifest.json"};
  cfg.predictions = {noisy_a, oracle_b};
  EvalReport report = run_pipeline(cfg);
  report.validate();

  for (const auto& c : report.cells) {
    bool is_cross = c.train_dataset_id != c.test_dataset_id;
    if (is_cross && c.baseline_iou) {
      REQUIRE(c.delta.has_value());
      double recomputed = (c.iou - *c.baseline_iou) / *c.baseline_iou * 100.0;
      CHECK(c.delta->pct == doctest::Approx(recomputed));
    }
    if (!is_cross) CHECK_FALSE(c.delta.has_value());
  }
}

TEST_CASE("pipeline validates configuration and duplicate dataset ids") {
  RunConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  TempDir data;
  generate(small_dataset_config(62, "alpha"), data.path);
  cfg.manifests = {data / "manifest.json", data / "manifest.json"};
  cfg.predictions = {oracle_source("m", "alpha")};
  CHECK_THROWS_AS(run_pipeline(cfg), ValidationError);

  cfg.manifests = {data / "manifest.json"};
  cfg.jobs = 0;
  CHECK_THROWS_AS(run_pipeline(cfg), ValidationError);
  cfg.jobs = 1;
  cfg.threshold = 1.5;
  CHECK_THROWS_AS(run_pipeline(cfg), ValidationError);
}

TEST_CASE("a palette that matches nothing empties the drivable plane") {
  TempDir data, palette_dir;
  SynthConfig synth = small_dataset_config(63, "alpha");
  synth.map_kind = MapKind::Raster;
  generate(synth, data.path);

  write_file_bytes(palette_dir / "palette.json",
                   "{\"targets\": [{\"color\": [1, 2, 3], \"tolerance\": [0, 0, 0]}]}\n");

  PredictionSource zeros;
  zeros.model = "zeros";
  zeros.train_id = "alpha";
  zeros.kind = PredictionSource::Kind::Zeros;

  RunConfig cfg;
  cfg.manifests = {data / "manifest.json"};
  cfg.predictions = {zeros};
  cfg.classes = {ClassLabel::DrivableArea};
  cfg.palette = palette_dir / "palette.json";
  EvalReport report = run_pipeline(cfg);
  // no drivable pixels match -> GT empty -> zeros vs empty is undefined
  CHECK(report.cells.empty());
}

TEST_CASE("emit_report writes exactly the requested formats") {
  TempDir data, out;
  generate(small_dataset_config(64, "alpha"), data.path);

  RunConfig cfg;
  cfg.manifests = {data / "manifest.json"};
  cfg.predictions = {oracle_source("oracle", "alpha")};
  EvalReport report = run_pipeline(cfg);

  ReportOutputs outputs;
  outputs.json = out / "r.json";
  outputs.markdown = out / "r.md";
  emit_report(report, outputs);
  CHECK(fs::exists(out / "r.json"));
  CHECK(fs::exists(out / "r.md"));
  CHECK_FALSE(fs::exists(out / "r.csv"));

  EvalReport loaded = load_report(out / "r.json");
  CHECK(report_to_json(loaded) == report_to_json(report));
}
