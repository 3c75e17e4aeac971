#include "beval/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "beval/boxes_raster.hpp"
#include "beval/grid_file.hpp"
#include "beval/hash.hpp"
#include "beval/rng.hpp"
#include "beval/synth.hpp"
#include "beval/version.hpp"

namespace beval {

namespace {

// Runs fn(i) for i in [0, n) on `jobs` threads; rethrows the first failure.
void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  int n_threads = static_cast<int>(std::min<size_t>(jobs, n));
  threads.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void copy_plane(SemanticGrid& dst, size_t dst_plane, const SemanticGrid& src,
                size_t src_plane) {
  const size_t n = dst.plane_size();
  std::copy_n(src.bits.data() + src_plane * n, n, dst.bits.data() + dst_plane * n);
}

// Prediction grid for one sample, or nullopt when the directory has none.
std::optional<SemanticGrid> load_prediction(const std::filesystem::path& dir,
                                            const std::string& sample_id,
                                            const std::vector<ClassLabel>& classes,
                                            double extent) {
  std::filesystem::path container = dir / (sample_id + ".bevg");
  if (std::filesystem::exists(container)) return load_grid(container, extent);
  std::filesystem::path first_png = dir / (sample_id + "_" + class_name(classes.front()) + ".png");
  if (std::filesystem::exists(first_png))
    return load_grid_from_pngs(dir, sample_id, classes, extent);
  return std::nullopt;
}

SemanticGrid noisy_prediction(const SemanticGrid& gt, double flip_prob,
                              std::uint64_t stream_seed) {
  SplitMix64 rng(stream_seed);
  SemanticGrid out = gt;
  for (uint8_t& cell : out.bits)
    if (rng.uniform01() < flip_prob) cell ^= 1;
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (manifests.empty()) throw ValidationError("pipeline: at least one dataset is required");
  if (predictions.empty()) throw ValidationError("pipeline: at least one prediction source");
  if (classes.empty()) throw ValidationError("pipeline: class list must be nonempty");
  if (!(threshold > 0.0 && threshold < 1.0))
    throw ValidationError("pipeline: threshold must lie in (0,1)");
  if (jobs < 1) throw ValidationError("pipeline: jobs must be >= 1");
  for (const PredictionSource& s : predictions) {
    if (s.train_id.empty()) throw ValidationError("pipeline: prediction source without train id");
    if (s.kind == PredictionSource::Kind::Directory && s.dir.empty())
      throw ValidationError("pipeline: directory prediction source without a path");
    if (s.kind == PredictionSource::Kind::Noisy && !(s.flip_prob >= 0.0 && s.flip_prob <= 1.0))
      throw ValidationError("pipeline: noisy flip probability must lie in [0,1]");
  }
}

LoadedDataset load_dataset(const std::filesystem::path& manifest_path,
                           const std::filesystem::path& palette_path) {
  LoadedDataset ds;
  ds.manifest = load_manifest(manifest_path);
  if (ds.manifest.map.kind == MapRef::Kind::Vector) {
    ds.vector_map = load_vector_map(ds.manifest.resolve(ds.manifest.map.path));
  } else {
    ds.raster_map = load_raster_map(ds.manifest.resolve(ds.manifest.map.path),
                                    ds.manifest.resolve(ds.manifest.map.meta_path));
  }
  ds.filter = palette_path.empty() ? synth_color_filter() : load_color_filter(palette_path);
  return ds;
}

SemanticGrid generate_sample_gt(const LoadedDataset& ds, const SampleRecord& sample,
                                const GridSpec& spec, const std::vector<ClassLabel>& classes,
                                std::vector<std::string>* warnings) {
  SemanticGrid grid = SemanticGrid::binary(spec, classes);
  std::vector<BoxAnnotation> boxes;
  bool boxes_loaded = false;
  for (size_t plane = 0; plane < classes.size(); ++plane) {
    ClassLabel label = classes[plane];
    if (label == ClassLabel::DrivableArea) {
      SemanticGrid sub =
          ds.vector_map
              ? rasterize_vector_map(*ds.vector_map, sample.ego_to_map, spec, label)
              : rasterize_raster_map(*ds.raster_map, sample.ego_to_map, spec, ds.filter,
                                     StructuringElement{}, warnings);
      copy_plane(grid, plane, sub, sub.plane_of(label));
    } else {
      if (!boxes_loaded) {
        boxes = load_boxes(ds.manifest.resolve(sample.boxes_path));
        boxes_loaded = true;
      }
      SemanticGrid sub = rasterize_boxes(boxes, label, spec);
      copy_plane(grid, plane, sub, sub.plane_of(label));
    }
  }
  return grid;
}

std::string gt_cache_key(const std::filesystem::path& manifest_path, const GridSpec& spec,
                         const std::vector<ClassLabel>& classes) {
  std::uint64_t h = fnv1a64(read_file_bytes(manifest_path));
  std::ostringstream tail;
  tail << spec.extent << "|" << spec.resolution << "|" << spec.cells_per_side;
  for (ClassLabel c : classes) tail << "|" << class_name(c);
  tail << "|" << kPipelineVersion;
  h = fnv1a64(tail.str(), h);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Ground truth for every sample of one dataset, via the cache when enabled.
std::vector<SemanticGrid> dataset_ground_truth(const LoadedDataset& ds,
                                               const std::filesystem::path& manifest_path,
                                               const RunConfig& cfg,
                                               std::vector<std::string>& warnings,
                                               std::mutex& warnings_mutex) {
  std::filesystem::path cache_subdir;
  if (!cfg.cache_dir.empty()) {
    cache_subdir = cfg.cache_dir / gt_cache_key(manifest_path, cfg.spec, cfg.classes);
    std::error_code ec;
    std::filesystem::create_directories(cache_subdir, ec);
    if (ec) throw IoError("cannot create cache directory: " + cache_subdir.string());
  }

  std::vector<SemanticGrid> grids(ds.manifest.samples.size());
  parallel_for(ds.manifest.samples.size(), cfg.jobs, [&](size_t i) {
    const SampleRecord& sample = ds.manifest.samples[i];
    if (!cache_subdir.empty()) {
      std::filesystem::path cached = cache_subdir / (sample.sample_id + ".bevg");
      if (std::filesystem::exists(cached)) {
        SemanticGrid g = load_grid(cached, cfg.spec.extent);
        if (g.spec == cfg.spec && g.classes == cfg.classes) {
          grids[i] = std::move(g);
          return;
        }
        // Stale or foreign entry under our key: fall through and rewrite it.
      }
    }
    std::vector<std::string> local;
    grids[i] = generate_sample_gt(ds, sample, cfg.spec, cfg.classes, &local);
    if (!local.empty()) {
      std::lock_guard<std::mutex> lock(warnings_mutex);
      for (std::string& w : local)
        warnings.push_back(ds.manifest.dataset_id + "/" + sample.sample_id + ": " + w);
    }
    if (!cache_subdir.empty())
      save_grid(grids[i], cache_subdir / (sample.sample_id + ".bevg"));
  });
  return grids;
}

}  // namespace

EvalReport run_pipeline(const RunConfig& config) {
  config.validate();

  EvalReport report;
  report.metadata.spec = config.spec;
  report.metadata.classes = config.classes;
  report.metadata.threshold = config.threshold;
  report.metadata.aggregation = config.per_sample_mean ? "per-sample-mean" : "dataset";
  report.metadata.pipeline_version = kPipelineVersion;

  std::mutex warnings_mutex;

  std::vector<LoadedDataset> datasets;
  datasets.reserve(config.manifests.size());
  for (const auto& path : config.manifests) datasets.push_back(load_dataset(path, config.palette));
  for (size_t d = 0; d < datasets.size(); ++d)
    for (size_t e = d + 1; e < datasets.size(); ++e)
      if (datasets[d].manifest.dataset_id == datasets[e].manifest.dataset_id)
        throw ValidationError("pipeline: duplicate dataset id " + datasets[d].manifest.dataset_id);

  std::vector<std::vector<SemanticGrid>> ground_truth;
  ground_truth.reserve(datasets.size());
  for (size_t d = 0; d < datasets.size(); ++d) {
    ground_truth.push_back(dataset_ground_truth(datasets[d], config.manifests[d], config,
                                                report.warnings, warnings_mutex));
    report.metadata.sample_counts[datasets[d].manifest.dataset_id] =
        datasets[d].manifest.samples.size();
  }

  for (const PredictionSource& source : config.predictions) {
    for (size_t d = 0; d < datasets.size(); ++d) {
      const LoadedDataset& ds = datasets[d];
      const std::vector<SemanticGrid>& gt = ground_truth[d];
      const size_t n = ds.manifest.samples.size();

      // Per-sample results land in index-addressed slots so that the final
      // reduction order never depends on thread scheduling.
      std::vector<IoUAccumulator> per_sample(
          n, IoUAccumulator::make(config.classes));
      std::vector<uint8_t> evaluated(n, 0);
      std::atomic<bool> any_already_binary{false};

      parallel_for(n, config.jobs, [&](size_t i) {
        const std::string& id = ds.manifest.samples[i].sample_id;
        SemanticGrid pred;
        switch (source.kind) {
          case PredictionSource::Kind::Directory: {
            std::optional<SemanticGrid> loaded =
                load_prediction(source.dir, id, config.classes, config.spec.extent);
            if (!loaded) {
              if (config.missing == MissingPolicy::Fail)
                throw ValidationError("missing prediction for " + ds.manifest.dataset_id +
                                      "/" + id + " in " + source.dir.string());
              std::lock_guard<std::mutex> lock(warnings_mutex);
              report.warnings.push_back("missing prediction for " + ds.manifest.dataset_id +
                                        "/" + id + " (" + source.model + "); sample skipped");
              return;
            }
            pred = std::move(*loaded);
            if (!(pred.spec == config.spec))
              throw ValidationError("prediction grid spec mismatch for " + id);
            break;
          }
          case PredictionSource::Kind::Oracle:
            pred = gt[i];
            break;
          case PredictionSource::Kind::Zeros:
            pred = SemanticGrid::binary(config.spec, config.classes);
            break;
          case PredictionSource::Kind::Noisy:
            pred = noisy_prediction(gt[i], source.flip_prob,
                                    source.noise_seed ^ fnv1a64(id));
            break;
        }
        bool already = false;
        SemanticGrid binary = binarize(pred, config.threshold, &already);
        if (already) any_already_binary.store(true, std::memory_order_relaxed);
        per_sample[i].accumulate(binary, gt[i]);
        evaluated[i] = 1;
      });

      if (source.kind == PredictionSource::Kind::Directory &&
          any_already_binary.load(std::memory_order_relaxed))
        report.warnings.push_back("predictions from " + source.dir.string() +
                                  " are already binary; threshold not applied");

      std::vector<std::optional<double>> per_class(config.classes.size());
      if (config.per_sample_mean) {
        for (size_t c = 0; c < config.classes.size(); ++c) {
          double sum = 0.0;
          size_t count = 0;
          for (size_t i = 0; i < n; ++i) {
            if (!evaluated[i] || per_sample[i].unions[c] == 0) continue;
            sum += static_cast<double>(per_sample[i].intersection[c]) /
                   static_cast<double>(per_sample[i].unions[c]);
            ++count;
          }
          if (count > 0) per_class[c] = sum / static_cast<double>(count);
        }
      } else {
        IoUAccumulator total = IoUAccumulator::make(config.classes);
        for (size_t i = 0; i < n; ++i)
          if (evaluated[i]) total.merge(per_sample[i]);
        per_class = total.finalize();
      }

      for (size_t c = 0; c < config.classes.size(); ++c) {
        if (!per_class[c]) {
          report.warnings.push_back("IoU undefined for (" + source.model + ", " +
                                    ds.manifest.dataset_id + ", " +
                                    class_name(config.classes[c]) +
                                    "): class absent from every sample; cell excluded");
          continue;
        }
        CrossEvalCell cell;
        cell.model = source.model;
        cell.train_dataset_id = source.train_id;
        cell.test_dataset_id = ds.manifest.dataset_id;
        cell.class_label = config.classes[c];
        cell.iou = *per_class[c];
        report.cells.push_back(cell);
      }
    }
  }

  compute_deltas(report);
  report.validate();
  return report;
}

void emit_report(const EvalReport& report, const ReportOutputs& outputs) {
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write report output: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
  };
  if (!outputs.json.empty()) save_report(report, outputs.json);
  write(outputs.csv, report_to_csv(report));
  write(outputs.markdown, report_to_markdown(report));
  write(outputs.plot_csv, report_to_plot_csv(report));
}

}  // namespace beval
