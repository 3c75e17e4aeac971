#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "beval/manifest.hpp"
#include "beval/raster_map.hpp"
#include "beval/report.hpp"
#include "beval/vector_map.hpp"

namespace beval {

// Where one "model's" prediction grids come from: a directory of grids
// (<sample_id>.bevg or one <sample_id>_<class>.png per class, auto-detected)
// or a builtin surrogate computed from the sample's ground truth. Builtins
// let the harness exercise the full evaluation matrix without trained models.
struct PredictionSource {
  std::string model = "model";
  std::string train_id;  // dataset id this source was "trained" on, or "both"
  enum class Kind : uint8_t { Directory, Oracle, Zeros, Noisy } kind = Kind::Directory;
  std::filesystem::path dir;         // Directory
  double flip_prob = 0.1;            // Noisy: per-cell flip probability
  std::uint64_t noise_seed = 0;      // Noisy: stream salt
};

enum class MissingPolicy : uint8_t { Fail, SkipWarn };

struct RunConfig {
  std::vector<std::filesystem::path> manifests;  // test datasets
  std::vector<PredictionSource> predictions;
  GridSpec spec = GridSpec::make(100.0, 0.5);
  std::vector<ClassLabel> classes = {ClassLabel::Vehicle, ClassLabel::Human,
                                     ClassLabel::DrivableArea};
  double threshold = 0.5;
  std::filesystem::path cache_dir;   // empty: no ground-truth cache
  std::filesystem::path palette;     // color-filter config; empty: builtin palette
  MissingPolicy missing = MissingPolicy::Fail;
  int jobs = 1;
  bool per_sample_mean = false;  // mean of per-sample IoUs instead of pooled counts

  void validate() const;
};

// Manifest plus its map, loaded once and shared across samples.
struct LoadedDataset {
  DatasetManifest manifest;
  std::optional<VectorMap> vector_map;
  std::optional<RasterMap> raster_map;
  ColorFilterSpec filter;
};

LoadedDataset load_dataset(const std::filesystem::path& manifest_path,
                           const std::filesystem::path& palette_path = {});

// Ground truth for one sample: box footprints for Vehicle/Human, map-derived
// drivable area (point-in-polygon for vector maps; crop + color filter +
// closing + block-majority downscale for raster maps).
SemanticGrid generate_sample_gt(const LoadedDataset& ds, const SampleRecord& sample,
                                const GridSpec& spec, const std::vector<ClassLabel>& classes,
                                std::vector<std::string>* warnings = nullptr);

// Cache key: manifest bytes + grid spec + class list + pipeline version,
// FNV-1a hashed, 16 hex digits. Cached grids live at <cache>/<key>/<id>.bevg.
std::string gt_cache_key(const std::filesystem::path& manifest_path, const GridSpec& spec,
                         const std::vector<ClassLabel>& classes);

// Evaluates every prediction source against every dataset and returns the
// delta-annotated report. Samples fan out over `jobs` worker threads;
// integer-count accumulators make the result independent of scheduling.
EvalReport run_pipeline(const RunConfig& config);

// Writes the selected formats; empty paths are skipped.
struct ReportOutputs {
  std::filesystem::path json;
  std::filesystem::path csv;
  std::filesystem::path markdown;
  std::filesystem::path plot_csv;
};
void emit_report(const EvalReport& report, const ReportOutputs& outputs);

}  // namespace beval
