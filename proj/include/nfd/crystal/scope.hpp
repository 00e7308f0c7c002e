#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfd/model/types.hpp"

namespace nfd {

struct Scope {
  std::optional<Date> from;
  std::optional<Date> to;
  std::vector<std::string> required_tags;
  std::vector<Category> categories;
  std::optional<int> max_entries;
  /// Explicit "everything" marker; a scope needs this or a constraint.
  bool all = false;
  bool include_consolidated = false;

  bool has_constraint() const;
  bool operator==(const Scope&) const = default;
};

/// Throws EmptyScope when the scope has neither a constraint nor `all`.
void check_scope(const Scope& scope);

/// Entries matching the scope, in corpus order, truncated to max_entries.
std::vector<ExperientialEntry> scope_filter(const ExperientialCorpus& corpus, const Scope& scope);

nlohmann::json scope_to_json(const Scope& scope);
Scope scope_from_json(const nlohmann::json& j);

}  // namespace nfd
