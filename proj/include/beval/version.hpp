#pragma once

namespace beval {

// Bumped whenever a pipeline stage changes behaviour; part of the GT cache key
// and embedded in every report.
inline constexpr const char* kPipelineVersion = "beval-0.1.0";

}  // namespace beval
