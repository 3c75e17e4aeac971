#pragma once

#include <filesystem>

#include "beval/image.hpp"

namespace beval {

// Decodes any PNG to 8-bit gray or RGB (palette expanded, 16-bit scaled
// down, alpha stripped).
ImageU8 load_png(const std::filesystem::path& path);

// compression: zlib level 0-9. Synthetic flat-shaded content compresses
// fine at low levels, which keeps dataset generation fast.
void save_png(const ImageU8& img, const std::filesystem::path& path, int compression = 6);

}  // namespace beval
