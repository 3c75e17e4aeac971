#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "beval/grid.hpp"
#include "beval/iou.hpp"

namespace beval {

// One entry of the cross-evaluation matrix: a model trained on
// `train_dataset_id` (possibly the pooled source "both"), tested on
// `test_dataset_id`, for one class. IoU values are stored as fractions in
// [0,1]; all emitters scale to percent for display.
struct CrossEvalCell {
  std::string model;  // prediction source tag; may be empty
  std::string train_dataset_id;
  std::string test_dataset_id;
  ClassLabel class_label = ClassLabel::Vehicle;
  double iou = 0.0;
  std::optional<double> baseline_iou;  // the (train == test) reference value
  std::optional<Delta> delta;          // present iff baseline_iou is present
};

struct ReportMetadata {
  GridSpec spec;
  std::vector<ClassLabel> classes;
  double threshold = 0.5;
  std::string aggregation = "dataset";  // or "per-sample-mean"
  std::string pipeline_version;
  std::map<std::string, std::uint64_t> sample_counts;  // per test dataset
  std::optional<std::string> timestamp;  // excluded from determinism checks
};

struct EvalReport {
  ReportMetadata metadata;
  std::vector<CrossEvalCell> cells;
  std::vector<std::string> warnings;

  // Enforces that each (model, train, test, class) appears once and that
  // delta annotations are self-consistent.
  void validate() const;
};

// Fills baseline_iou/delta on every cell whose train source differs from its
// test dataset, looking up the (train == test) cell for the same model and
// class in `baselines` (or in the report itself for the one-argument form).
// Cross cells without a matching positive baseline keep nullopt and add a
// warning to the report.
void compute_deltas(EvalReport& report);
void compute_deltas(EvalReport& report, const EvalReport& baselines);

// Canonical JSON (sorted keys, 2-space indent, trailing newline, full value
// precision). Byte-identical for identical report content.
std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);
void save_report(const EvalReport& report, const std::filesystem::path& path);
EvalReport load_report(const std::filesystem::path& path);

// CSV at display precision: model,train,test,class,iou,baseline_iou,
// delta_pct,direction. IoU columns are percentages.
std::string report_to_csv(const EvalReport& report);

// Markdown: one sub-table per class; one baseline column per test dataset
// plus asterisked columns for cross-trained sources, cross cells rendered
// as "10.5 (68.13% ↓)".
std::string report_to_markdown(const EvalReport& report);

// Long-format CSV (model,class,train,test,iou) feeding bar-chart scripts.
std::string report_to_plot_csv(const EvalReport& report);

// Human-facing class names for table headings ("Drivable Area").
std::string class_display_name(ClassLabel label);

}  // namespace beval
