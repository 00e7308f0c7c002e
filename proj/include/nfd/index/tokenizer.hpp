#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nfd {

/// Lowercases, splits on anything that is not an ASCII letter or digit and
/// drops tokens shorter than two bytes. Bytes >= 0x80 are separators.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace nfd
