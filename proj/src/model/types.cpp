#include "nfd/model/types.hpp"

#include <algorithm>
#include <utility>

#include <fmt/format.h>

namespace nfd {

namespace {

struct TagMapping {
  std::string_view tag;
  Category category;
};

// The first tag listed for a category is its canonical tag.
constexpr std::array<TagMapping, 16> kCategoryTags = {{
    {"DECISION", Category::OperationalRecord},
    {"ACTION", Category::OperationalRecord},
    {"OUTCOME", Category::OperationalRecord},
    {"REASONING", Category::ReasoningTrace},
    {"RATIONALE", Category::ReasoningTrace},
    {"PATTERN", Category::PatternObservation},
    {"OBSERVATION", Category::PatternObservation},
    {"ERROR", Category::ErrorRecord},
    {"MISTAKE", Category::ErrorRecord},
    {"CORRECTION", Category::ErrorRecord},
    {"CONTEXT", Category::ContextualAnnotation},
    {"ANNOTATION", Category::ContextualAnnotation},
    {"INSIGHT", Category::InsightFragment},
    {"REALIZATION", Category::InsightFragment},
    {"OPERATIONAL", Category::OperationalRecord},
    {"TRACE", Category::ReasoningTrace},
}};

}  // namespace

std::string_view category_name(Category c) {
  switch (c) {
    case Category::OperationalRecord: return "OperationalRecord";
    case Category::ReasoningTrace: return "ReasoningTrace";
    case Category::PatternObservation: return "PatternObservation";
    case Category::ErrorRecord: return "ErrorRecord";
    case Category::ContextualAnnotation: return "ContextualAnnotation";
    case Category::InsightFragment: return "InsightFragment";
  }
  return "OperationalRecord";
}

std::optional<Category> parse_category(std::string_view name) {
  for (Category c : kAllCategories) {
    if (category_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view category_tag(Category c) {
  for (const auto& m : kCategoryTags) {
    if (m.category == c) return m.tag;
  }
  return "DECISION";
}

std::optional<Category> category_of_tag(std::string_view tag) {
  for (const auto& m : kCategoryTags) {
    if (m.tag == tag) return m.category;
  }
  return std::nullopt;
}

std::string_view phase_name(LifecyclePhase p) {
  switch (p) {
    case LifecyclePhase::Bootstrap: return "Bootstrap";
    case LifecyclePhase::InitialNurturing: return "InitialNurturing";
    case LifecyclePhase::StructuredNurturing: return "StructuredNurturing";
    case LifecyclePhase::Mature: return "Mature";
  }
  return "Bootstrap";
}

std::optional<LifecyclePhase> parse_phase(std::string_view name) {
  for (auto p : {LifecyclePhase::Bootstrap, LifecyclePhase::InitialNurturing, LifecyclePhase::StructuredNurturing,
                 LifecyclePhase::Mature}) {
    if (phase_name(p) == name) return p;
  }
  return std::nullopt;
}

std::string EntryId::str() const { return fmt::format("{}#{:04}", date.str(), sequence); }

std::optional<EntryId> EntryId::parse(std::string_view text) {
  if (text.size() != 15 || text[10] != '#') return std::nullopt;
  auto date = Date::parse(text.substr(0, 10));
  if (!date) return std::nullopt;
  int seq = 0;
  for (char c : text.substr(11)) {
    if (c < '0' || c > '9') return std::nullopt;
    seq = seq * 10 + (c - '0');
  }
  if (seq == 0) return std::nullopt;
  return EntryId{*date, seq};
}

bool ExperientialEntry::has_tag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

const ExperientialEntry* ExperientialCorpus::find(const EntryId& id) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), id,
                             [](const ExperientialEntry& e, const EntryId& key) { return e.id < key; });
  if (it == entries.end() || it->id != id) return nullptr;
  return &*it;
}

std::size_t ExperientialCorpus::unconsolidated_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.consolidated_into; }));
}

std::string_view status_name(PrincipleStatus s) {
  switch (s) {
    case PrincipleStatus::Proposed: return "proposed";
    case PrincipleStatus::Confirmed: return "confirmed";
    case PrincipleStatus::Contradicted: return "contradicted";
  }
  return "proposed";
}

std::optional<PrincipleStatus> parse_principle_status(std::string_view s) {
  if (s == "proposed") return PrincipleStatus::Proposed;
  if (s == "confirmed") return PrincipleStatus::Confirmed;
  if (s == "contradicted") return PrincipleStatus::Contradicted;
  return std::nullopt;
}

const SkillAsset* KnowledgeState::find_skill(std::string_view name) const {
  for (const auto& s : skills) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

SkillAsset* KnowledgeState::find_skill(std::string_view name) {
  return const_cast<SkillAsset*>(std::as_const(*this).find_skill(name));
}

}  // namespace nfd
