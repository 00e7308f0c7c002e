#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nfd/common/date.hpp"

namespace nfd {

/// The six kinds of experiential knowledge an entry can record.
enum class Category {
  OperationalRecord,
  ReasoningTrace,
  PatternObservation,
  ErrorRecord,
  ContextualAnnotation,
  InsightFragment,
};

inline constexpr std::array<Category, 6> kAllCategories = {
    Category::OperationalRecord,  Category::ReasoningTrace,       Category::PatternObservation,
    Category::ErrorRecord,        Category::ContextualAnnotation, Category::InsightFragment,
};

std::string_view category_name(Category c);
std::optional<Category> parse_category(std::string_view name);
/// Canonical tag written for a category when no explicit category tag exists.
std::string_view category_tag(Category c);
/// Maps recognized category tags (DECISION, INSIGHT, ERROR, ...) to a category.
std::optional<Category> category_of_tag(std::string_view tag);

enum class LifecyclePhase { Bootstrap, InitialNurturing, StructuredNurturing, Mature };

std::string_view phase_name(LifecyclePhase p);
std::optional<LifecyclePhase> parse_phase(std::string_view name);

/// `YYYY-MM-DD#NNNN`: the log date plus the 1-based position of the entry in
/// that day's file.
struct EntryId {
  Date date;
  int sequence = 0;

  std::string str() const;
  static std::optional<EntryId> parse(std::string_view text);
  auto operator<=>(const EntryId&) const = default;
};

struct AssetRef {
  std::string asset_name;
  int version = 0;
  bool operator==(const AssetRef&) const = default;
};

struct ExperientialEntry {
  EntryId id;
  std::optional<TimeOfDay> timestamp;
  std::vector<std::string> tags;
  Category category = Category::OperationalRecord;
  std::string body;
  std::map<std::string, std::string> context;
  std::optional<AssetRef> consolidated_into;

  bool has_tag(std::string_view tag) const;
  bool operator==(const ExperientialEntry&) const = default;
};

struct ConsolidationRecord {
  std::string batch_id;
  std::vector<EntryId> entry_ids;
  std::string asset_name;
  int asset_version = 0;
  bool operator==(const ConsolidationRecord&) const = default;
};

struct ExperientialCorpus {
  /// Sorted by id.
  std::vector<ExperientialEntry> entries;
  std::vector<ConsolidationRecord> archived_groups;
  /// Raw daily-log bytes by date. Entries are parsed from these and new
  /// entries are only ever appended to them.
  std::map<Date, std::string> logs;

  const ExperientialEntry* find(const EntryId& id) const;
  std::size_t unconsolidated_count() const;
  bool operator==(const ExperientialCorpus&) const = default;
};

enum class PrincipleStatus { Proposed, Confirmed, Contradicted };

std::string_view status_name(PrincipleStatus s);
std::optional<PrincipleStatus> parse_principle_status(std::string_view s);

struct Principle {
  std::string id;
  std::string text;
  PrincipleStatus status = PrincipleStatus::Proposed;
  std::vector<EntryId> source_entries;
  bool user_origin = false;
  bool operator==(const Principle&) const = default;
};

inline constexpr std::array<std::string_view, 4> kConstitutionalDocs = {"SOUL.md", "AGENTS.md", "USER.md",
                                                                       "MEMORY.md"};

struct ConstitutionalLayer {
  std::map<std::string, std::string> documents;
  /// Mirrors the principle block inside MEMORY.md; persist re-renders the
  /// block from this list.
  std::vector<Principle> principles;
  bool operator==(const ConstitutionalLayer&) const = default;
};

struct SectionFlags {
  bool validated = false;
  bool decontextualized = false;
  bool has_examples = false;
  bool has_conditions = false;
  bool operator==(const SectionFlags&) const = default;
};

/// A `## ` section inside a skill reference file.
struct ReferenceSection {
  std::string file;
  std::string heading;
  SectionFlags flags;
  std::vector<EntryId> provenance;
  /// Proposed category of the crystallized pattern (`ErrorPattern`, ...); empty
  /// for hand-written sections.
  std::string kind;
  std::string batch_id;
  /// The section carries content beyond its heading and marker.
  bool populated = false;
};

struct VersionRecord {
  int version = 0;
  std::string batch_id;
  Timestamp timestamp;
  std::string change_summary;
  std::string content_hash;
  bool operator==(const VersionRecord&) const = default;
};

struct SkillAsset {
  std::string name;
  std::string instructions;
  std::map<std::string, std::string> references;
  std::map<std::string, std::string> scripts;
  std::vector<VersionRecord> versions;

  std::vector<ReferenceSection> sections() const;
  /// Union of section provenance, in first-seen order.
  std::vector<EntryId> provenance() const;
  /// A flag is set when every section carries it (false with no sections).
  SectionFlags flags() const;
  int current_version() const { return versions.empty() ? 0 : versions.back().version; }

  bool operator==(const SkillAsset&) const = default;
};

struct EngineConfig {
  double alpha = 1.0 / 3.0;
  double beta = 1.0 / 3.0;
  double gamma = 1.0 / 3.0;
  int constitutional_budget_tokens = 2000;
  int min_support = 3;
  double similarity_threshold = 0.35;
  double decay_lambda = 0.01;
  int n_sat = 500;
  int s_sat = 20;
  int threshold_trigger = 50;
  std::string schedule = "manual";
  bool operator==(const EngineConfig&) const = default;
};

/// Authorization for a change to a gated unit (a skill folder or a
/// constitutional document), issued by integrate for a reviewed batch.
struct WriteGrant {
  std::string batch_id;
  /// `skills/<name>` or a constitutional file name.
  std::string unit;
  std::uint64_t content_hash = 0;
  bool operator==(const WriteGrant&) const = default;
};

struct KnowledgeState {
  ConstitutionalLayer constitutional;
  /// Sorted by name.
  std::vector<SkillAsset> skills;
  ExperientialCorpus experiential;
  EngineConfig config;
  LifecyclePhase lifecycle_phase = LifecyclePhase::Bootstrap;
  /// Session-only; never serialized.
  std::vector<WriteGrant> write_grants;

  const SkillAsset* find_skill(std::string_view name) const;
  SkillAsset* find_skill(std::string_view name);
  bool operator==(const KnowledgeState&) const = default;
};

}  // namespace nfd
