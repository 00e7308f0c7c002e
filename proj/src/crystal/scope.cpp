#include "nfd/crystal/scope.hpp"

#include <algorithm>

#include "nfd/common/error.hpp"

namespace nfd {

using nlohmann::json;

bool Scope::has_constraint() const {
  return from || to || !required_tags.empty() || !categories.empty() || max_entries;
}

void check_scope(const Scope& scope) {
  if (!scope.all && !scope.has_constraint()) {
    throw Error(ErrorCode::EmptyScope, "scope has no constraint; pass tags, categories, dates, a limit or 'all'");
  }
  if (scope.max_entries && *scope.max_entries < 1) {
    throw Error(ErrorCode::InvalidArgument, "max_entries must be at least 1");
  }
}

std::vector<ExperientialEntry> scope_filter(const ExperientialCorpus& corpus, const Scope& scope) {
  std::vector<ExperientialEntry> out;
  for (const auto& e : corpus.entries) {
    if (scope.max_entries && out.size() >= static_cast<std::size_t>(*scope.max_entries)) break;
    if (e.consolidated_into && !scope.include_consolidated) continue;
    if (scope.from && e.id.date < *scope.from) continue;
    if (scope.to && e.id.date > *scope.to) continue;
    bool tags_ok = std::all_of(scope.required_tags.begin(), scope.required_tags.end(),
                               [&](const std::string& t) { return e.has_tag(t); });
    if (!tags_ok) continue;
    if (!scope.categories.empty() &&
        std::find(scope.categories.begin(), scope.categories.end(), e.category) == scope.categories.end()) {
      continue;
    }
    out.push_back(e);
  }
  return out;
}

json scope_to_json(const Scope& scope) {
  json j = json::object();
  j["all"] = scope.all;
  j["include_consolidated"] = scope.include_consolidated;
  j["from"] = scope.from ? json(scope.from->str()) : json(nullptr);
  j["to"] = scope.to ? json(scope.to->str()) : json(nullptr);
  j["tags"] = scope.required_tags;
  json cats = json::array();
  for (auto c : scope.categories) cats.push_back(std::string(category_name(c)));
  j["categories"] = cats;
  j["max_entries"] = scope.max_entries ? json(*scope.max_entries) : json(nullptr);
  return j;
}

Scope scope_from_json(const json& j) {
  Scope s;
  s.all = j.value("all", false);
  s.include_consolidated = j.value("include_consolidated", false);
  auto date_field = [&](const char* key) -> std::optional<Date> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    auto d = Date::parse(j[key].get<std::string>());
    if (!d) throw Error(ErrorCode::ParseError, std::string("scope: bad date in ") + key);
    return d;
  };
  s.from = date_field("from");
  s.to = date_field("to");
  if (j.contains("tags")) s.required_tags = j["tags"].get<std::vector<std::string>>();
  if (j.contains("categories")) {
    for (const auto& c : j["categories"]) {
      auto cat = parse_category(c.get<std::string>());
      if (!cat) throw Error(ErrorCode::ParseError, "scope: unknown category " + c.get<std::string>());
      s.categories.push_back(*cat);
    }
  }
  if (j.contains("max_entries") && !j["max_entries"].is_null()) s.max_entries = j["max_entries"].get<int>();
  return s;
}

}  // namespace nfd
