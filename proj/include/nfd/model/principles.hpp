#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nfd/model/types.hpp"

namespace nfd {

inline constexpr std::string_view kPrinciplesBegin = "<!-- nfd:principles:begin -->";
inline constexpr std::string_view kPrinciplesEnd = "<!-- nfd:principles:end -->";

struct PrincipleBlock {
  std::vector<Principle> principles;
  /// (1-based line in MEMORY.md, message)
  std::vector<std::pair<int, std::string>> warnings;
};

/// Reads principle lines of the form
/// `- [P-0001|confirmed] text (origin: user; sources: 2025-01-02#0001)`
/// from the delimited block in MEMORY.md.
PrincipleBlock parse_principles(std::string_view memory_text);

std::string render_principle(const Principle& p);

/// Replaces the block contents with the rendered principles. Appends a new
/// `## Principles` section when the block is absent and there is something
/// to write.
std::string splice_principles(std::string_view memory_text, const std::vector<Principle>& principles);

std::string next_principle_id(const std::vector<Principle>& principles);

}  // namespace nfd
