#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nfd/crystal/patterns.hpp"
#include "nfd/crystal/scope.hpp"
#include "nfd/model/types.hpp"

namespace nfd {

enum class BatchStatus { Pending, Decided, Integrated };

std::string_view batch_status_name(BatchStatus s);
std::optional<BatchStatus> parse_batch_status(std::string_view s);

enum class Verdict { Approve, Reject, Edit };

std::string_view verdict_name(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

struct Substitution {
  std::string literal;
  std::string placeholder;
  bool operator==(const Substitution&) const = default;
};

struct ReviewDecision {
  std::string candidate_id;
  Verdict verdict = Verdict::Reject;
  std::optional<std::string> edited_text;
  std::optional<std::string> target_skill;
  std::vector<Substitution> generalization_notes;
  std::optional<std::string> principle_text;
  bool operator==(const ReviewDecision&) const = default;
};

struct DecisionDocument {
  std::string batch_id;
  std::vector<ReviewDecision> decisions;
  bool operator==(const DecisionDocument&) const = default;
};

/// A structured, generalized and corpus-validated asset awaiting integrate.
struct DraftAsset {
  std::string candidate_id;
  ProposedCategory kind = ProposedCategory::SkillReference;
  std::vector<std::string> tag_signature;
  /// Empty for principle-only drafts.
  std::string target_skill;
  std::string reference_file;
  /// Full markdown of the `## ` section, ending with a newline.
  std::string section;
  std::string body;
  std::vector<EntryId> support_entries;
  int corpus_support = 0;
  int contradictions = 0;
  bool decontextualized = false;
  std::optional<std::string> principle_text;
  bool operator==(const DraftAsset&) const = default;
};

struct DroppedDraft {
  std::string candidate_id;
  std::string reason;
  bool operator==(const DroppedDraft&) const = default;
};

struct ReviewBatch {
  std::string batch_id;
  Timestamp created_at;
  Scope scope;
  std::vector<PatternCandidate> candidates;
  BatchStatus status = BatchStatus::Pending;
  std::vector<DraftAsset> drafts;
  std::vector<DroppedDraft> dropped;

  const PatternCandidate* find(std::string_view candidate_id) const;
  bool operator==(const ReviewBatch&) const = default;
};

struct AssetVersion {
  std::string name;
  int version = 0;
  std::string content_hash;
  bool operator==(const AssetVersion&) const = default;
};

struct HistoryRecord {
  std::string batch_id;
  Timestamp integrated_at;
  std::vector<AssetVersion> assets;
  int entries_consolidated = 0;
  double delta_structure = 0;
  /// Absent when nothing was consolidated.
  std::optional<double> eta;
  std::vector<std::string> principles_updated;
  bool operator==(const HistoryRecord&) const = default;
};

nlohmann::json candidate_to_json(const PatternCandidate& c);
nlohmann::json batch_to_json(const ReviewBatch& b);
ReviewBatch batch_from_json(const nlohmann::json& j);

nlohmann::json decisions_to_json(const DecisionDocument& d);
/// Throws InvalidDecision for documents that do not follow the schema.
DecisionDocument decisions_from_json(const nlohmann::json& j);

nlohmann::json history_to_json(const HistoryRecord& h);
HistoryRecord history_from_json(const nlohmann::json& j);

}  // namespace nfd
