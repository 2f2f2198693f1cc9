#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mmif {

/// 64-bit FNV-1a. Stable across platforms; used for fixture keys, template
/// versions, config digests and per-record RNG seeds. Not cryptographic.
constexpr std::uint64_t fnv1a64(std::string_view data,
                                std::uint64_t seed = 0xcbf29ce484222325ULL) {
  std::uint64_t h = seed;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Lowercase 16-digit hex rendering of fnv1a64(data).
std::string fnv1a64_hex(std::string_view data);

}  // namespace mmif
