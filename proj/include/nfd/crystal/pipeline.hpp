#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nfd/crystal/review.hpp"
#include "nfd/crystal/scope.hpp"
#include "nfd/crystal/store.hpp"
#include "nfd/model/types.hpp"

namespace nfd {

/// Skills that integrate creates on demand when a decision names no target.
inline constexpr const char* kErrorPatternsSkill = "error-patterns";
inline constexpr const char* kCaseLibrarySkill = "case-library";

/// `CC-YYYYMMDD-N` with N one past the number of batches opened that day.
std::string next_batch_id(const CrystalStore& store, Date date);

/// Filters, extracts and records a new batch. A batch without candidates is
/// decided at once. Throws EmptyScope, OverlappingPendingBatch.
ReviewBatch open_batch(const KnowledgeState& state, CrystalStore& store, const Scope& scope, Timestamp now);

/// Applies the reviewer's substitutions in order.
std::string decontextualize(std::string_view text, const std::vector<Substitution>& notes);

/// Markdown `## ` section for a draft: heading, marker, body, a Conditions
/// stub, up to three example snippets and provenance links.
std::string structure_section(const PatternCandidate& candidate, const std::string& batch_id, std::string_view body,
                              const std::vector<std::string>& example_snippets, bool decontextualized);

struct CorpusSupport {
  int support = 0;
  int contradictions = 0;
};

/// Entries of the whole corpus sharing the signature whose body is at least
/// threshold-similar to `body`, and entries tagged CONTRADICTS-<KEY>.
CorpusSupport corpus_support(const ExperientialCorpus& corpus, const std::vector<std::string>& signature,
                             std::string_view body, const EngineConfig& config);

std::string contradiction_tag(const std::vector<std::string>& signature);

/// Structures, generalizes and validates every approved or edited
/// candidate, records the decision document and marks the batch decided.
/// Throws UnknownBatch, BatchNotPending, MissingDecision, InvalidDecision,
/// UnknownTargetSkill.
std::vector<DraftAsset> apply_decisions(const KnowledgeState& state, CrystalStore& store, const std::string& batch_id,
                                        const DecisionDocument& decisions);

struct IntegrationReport {
  std::string batch_id;
  std::vector<AssetVersion> assets_written;
  int entries_consolidated = 0;
  std::vector<std::string> principles_updated;
  double delta_structure = 0;
  std::optional<double> eta;
};

/// Writes the batch's drafts into the skill and constitutional layers,
/// bumps versions, marks support entries consolidated and records history.
/// Throws UnknownBatch, BatchNotDecided.
IntegrationReport integrate(KnowledgeState& state, CrystalStore& store, const std::string& batch_id, Timestamp now);

nlohmann::json integration_to_json(const IntegrationReport& r);

}  // namespace nfd
