#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nfd/model/types.hpp"

namespace nfd {

/// Lowercase cue phrases that mark an untagged utterance as one of the six
/// categories.
struct CueLexicon {
  std::map<Category, std::vector<std::string>> cues;

  static CueLexicon defaults();
  /// Categories present in `j` replace the default cue list for that
  /// category; the rest keep their defaults.
  static CueLexicon with_overrides(const nlohmann::json& j);

  /// Category of the cue that occurs earliest in `body` (whole-word match,
  /// case-insensitive). Ties go to the longer cue, then to category order.
  std::optional<Category> infer(std::string_view body) const;
};

}  // namespace nfd
