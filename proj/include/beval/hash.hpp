#pragma once

#include <cstdint>
#include <string_view>

namespace beval {

// FNV-1a 64-bit: stable content hashing for cache keys and derived seeds.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 0xCBF29CE484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace beval
