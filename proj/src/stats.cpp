#include "beval/stats.hpp"

#include <algorithm>
#include <cmath>

#include "beval/error.hpp"

namespace beval {

CloudStats compute_stats(const std::vector<int64_t>& counts, double bin_width) {
  if (counts.empty()) throw ValidationError("compute_stats: empty input");
  if (!(bin_width > 0.0)) throw ValidationError("compute_stats: bin width must be positive");

  std::vector<int64_t> sorted = counts;
  std::sort(sorted.begin(), sorted.end());

  CloudStats s;
  s.count = sorted.size();
  s.min = sorted.front();
  s.max = sorted.back();

  int64_t sum = 0;
  for (int64_t v : sorted) sum += v;
  s.mean = static_cast<double>(sum) / static_cast<double>(s.count);

  size_t mid = s.count / 2;
  s.median = (s.count % 2 == 1)
                 ? static_cast<double>(sorted[mid])
                 : (static_cast<double>(sorted[mid - 1]) + static_cast<double>(sorted[mid])) / 2.0;

  s.histogram.bin_width = bin_width;
  s.histogram.first_bin = static_cast<int64_t>(std::floor(s.min / bin_width));
  int64_t last_bin = static_cast<int64_t>(std::floor(s.max / bin_width));
  s.histogram.counts.assign(last_bin - s.histogram.first_bin + 1, 0);
  for (int64_t v : sorted) {
    int64_t bin = static_cast<int64_t>(std::floor(v / bin_width)) - s.histogram.first_bin;
    ++s.histogram.counts[bin];
  }
  return s;
}

}  // namespace beval
