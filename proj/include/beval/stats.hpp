#pragma once

#include <cstdint>
#include <vector>

namespace beval {

// Fixed-width histogram: bin k covers [(first_bin + k) * bin_width,
// (first_bin + k + 1) * bin_width). Bin counts sum to the sample count.
struct Histogram {
  double bin_width = 2000.0;
  int64_t first_bin = 0;
  std::vector<int64_t> counts;
};

struct CloudStats {
  size_t count = 0;
  int64_t min = 0;
  int64_t max = 0;
  double mean = 0.0;    // exact integer sum divided by count (one rounding)
  double median = 0.0;  // even length: average of the two middle values
  Histogram histogram;
};

// Throws ValidationError on an empty sequence or non-positive bin width.
CloudStats compute_stats(const std::vector<int64_t>& counts, double bin_width = 2000.0);

}  // namespace beval
