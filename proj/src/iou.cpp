#include "beval/iou.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "beval/error.hpp"

namespace beval {

IoUAccumulator IoUAccumulator::make(const std::vector<ClassLabel>& classes) {
  if (classes.empty()) throw ValidationError("IoU accumulator needs at least one class");
  IoUAccumulator acc;
  acc.classes = classes;
  acc.intersection.assign(classes.size(), 0);
  acc.unions.assign(classes.size(), 0);
  return acc;
}

void IoUAccumulator::accumulate(const SemanticGrid& prediction,
                                const SemanticGrid& ground_truth) {
  if (prediction.kind != GridKind::Binary || ground_truth.kind != GridKind::Binary)
    throw ValidationError("IoU accumulation requires binary grids; binarize first");
  if (!(prediction.spec == ground_truth.spec))
    throw ValidationError("prediction and ground truth use different grid specs");
  const size_t plane = prediction.plane_size();
  for (size_t c = 0; c < classes.size(); ++c) {
    const size_t pp = prediction.plane_of(classes[c]);
    const size_t gp = ground_truth.plane_of(classes[c]);
    const uint8_t* a = prediction.bits.data() + pp * plane;
    const uint8_t* b = ground_truth.bits.data() + gp * plane;
    uint64_t inter = 0, uni = 0;
    for (size_t i = 0; i < plane; ++i) {
      inter += a[i] & b[i];
      uni += a[i] | b[i];
    }
    intersection[c] += inter;
    unions[c] += uni;
  }
}

void IoUAccumulator::merge(const IoUAccumulator& other) {
  if (other.classes != classes)
    throw ValidationError("cannot merge IoU accumulators with different class sets");
  for (size_t c = 0; c < classes.size(); ++c) {
    intersection[c] += other.intersection[c];
    unions[c] += other.unions[c];
  }
}

std::vector<std::optional<double>> IoUAccumulator::finalize() const {
  std::vector<std::optional<double>> out(classes.size());
  for (size_t c = 0; c < classes.size(); ++c) {
    if (unions[c] == 0) continue;  // class absent everywhere: IoU undefined
    out[c] = static_cast<double>(intersection[c]) / static_cast<double>(unions[c]);
  }
  return out;
}

SemanticGrid binarize(const SemanticGrid& grid, double threshold, bool* already_binary) {
  if (grid.kind == GridKind::Binary) {
    if (already_binary) *already_binary = true;
    return grid;
  }
  if (already_binary) *already_binary = false;
  if (!std::isfinite(threshold))
    throw ValidationError("binarize threshold must be finite");
  SemanticGrid out = SemanticGrid::binary(grid.spec, grid.classes);
  for (size_t i = 0; i < grid.probs.size(); ++i)
    out.bits[i] = grid.probs[i] >= threshold ? 1 : 0;
  return out;
}

std::optional<double> sample_iou(const SemanticGrid& prediction,
                                 const SemanticGrid& ground_truth, ClassLabel label) {
  IoUAccumulator acc = IoUAccumulator::make({label});
  acc.accumulate(prediction, ground_truth);
  return acc.finalize()[0];
}

std::optional<Delta> delta_pct(double cross, double baseline) {
  if (!(baseline > 0.0) || !std::isfinite(baseline) || !std::isfinite(cross))
    return std::nullopt;
  Delta d;
  d.pct = (cross - baseline) / baseline * 100.0;
  if (cross < baseline)
    d.direction = DeltaDirection::Drop;
  else if (cross > baseline)
    d.direction = DeltaDirection::Increase;
  else
    d.direction = DeltaDirection::Flat;
  return d;
}

std::string format_metric(double value) {
  // Round half away from zero at two decimals, then trim.
  double scaled = std::round(std::abs(value) * 100.0);
  double rounded = std::copysign(scaled / 100.0, value);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", rounded);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

}  // namespace beval
