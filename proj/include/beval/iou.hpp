#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beval/grid.hpp"

namespace beval {

// Per-class intersection/union cell counts, accumulated over a dataset.
// Counts are exact integers, so accumulators can be merged across workers
// in any order without changing the final ratio.
struct IoUAccumulator {
  std::vector<ClassLabel> classes;
  std::vector<std::uint64_t> intersection;  // one per class
  std::vector<std::uint64_t> unions;        // one per class

  static IoUAccumulator make(const std::vector<ClassLabel>& classes);

  // Adds one sample's prediction/ground-truth pair. Both grids must be
  // binary, share one GridSpec, and carry at least the accumulator's classes.
  void accumulate(const SemanticGrid& prediction, const SemanticGrid& ground_truth);

  void merge(const IoUAccumulator& other);

  // Dataset-level IoU per class: sum(I)/sum(U). A class never observed in
  // either grid has union == 0; its IoU is undefined and reported as nullopt.
  std::vector<std::optional<double>> finalize() const;
};

// Thresholds a probability grid into a binary one (cell >= threshold -> 1).
// Binary grids pass through unchanged; `already_binary` (if given) is set so
// callers can surface a notice instead of silently re-thresholding.
SemanticGrid binarize(const SemanticGrid& grid, double threshold = 0.5,
                      bool* already_binary = nullptr);

// Per-sample IoU for a single class pair of binary grids (used by the
// per-sample-mean aggregation mode). nullopt when the union is empty.
std::optional<double> sample_iou(const SemanticGrid& prediction,
                                 const SemanticGrid& ground_truth, ClassLabel label);

enum class DeltaDirection { Drop, Increase, Flat };

struct Delta {
  double pct;  // (cross - baseline) / baseline * 100
  DeltaDirection direction;
};

// Baseline-relative change of an IoU value, in percent. The direction is
// decided by the exact sign of (cross - baseline). Undefined when the
// baseline is not a positive number.
std::optional<Delta> delta_pct(double cross, double baseline);

// Formats a value with two decimals (half away from zero), then trims
// trailing zeros and a trailing decimal point: 80.30 -> "80.3", 52.584 ->
// "52.58", 68.0 -> "68".
std::string format_metric(double value);

}  // namespace beval
