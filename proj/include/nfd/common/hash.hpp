#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace nfd {

/// 64-bit FNV-1a. Stable across platforms; used for content hashes on disk.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

std::string to_hex(std::uint64_t value);
std::optional<std::uint64_t> from_hex(std::string_view text);

}  // namespace nfd
