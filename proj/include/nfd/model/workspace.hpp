#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nfd/common/fs.hpp"
#include "nfd/ingest/lexicon.hpp"
#include "nfd/model/types.hpp"

namespace nfd {

// Canonical workspace layout (relative to the root):
//
//   SOUL.md AGENTS.md USER.md MEMORY.md   constitutional layer
//   skills/<name>/SKILL.md                skill instructions
//   skills/<name>/references/*.md         crystallized reference knowledge
//   skills/<name>/scripts/**              opaque helper scripts
//   skills/<name>/versions.json           engine version history
//   memory/YYYY-MM-DD.md                  daily experiential logs
//   memory/consolidation.json             consolidation links
//   memory/index/shard.json               retrieval index (rebuildable)
//   crystal/{pending,decisions,history}/  crystallization artifacts
//   nfd.json                              engine config
//   lexicon.json                          optional cue-lexicon override

inline constexpr const char* kConfigFile = "nfd.json";
inline constexpr const char* kLexiconFile = "lexicon.json";
inline constexpr const char* kConsolidationFile = "memory/consolidation.json";

struct LoadWarning {
  std::string file;
  int line = 0;
  std::string message;
};

struct LoadResult {
  KnowledgeState state;
  std::vector<LoadWarning> warnings;
};

/// Creates the canonical layout with skeleton documents. Fails with
/// TargetNotEmpty when `root` holds any non-hidden entry.
KnowledgeState scaffold_workspace(const fs::path& root, const std::optional<std::string>& persona_seed = {});

/// Parses every layer. Malformed log lines become warnings; only files that
/// cannot be read structurally (JSON documents) raise ParseError.
LoadResult load_state(const fs::path& root);

CueLexicon load_lexicon(const fs::path& root);

/// Decides whether a batch may back a write to a gated unit
/// (`skills/<name>` or a constitutional document name).
class GateAuthority {
 public:
  virtual ~GateAuthority() = default;
  virtual bool authorizes(std::string_view batch_id, std::string_view unit) const = 0;
};

struct WriteRecord {
  std::string path;
  /// Batch backing a write under skills/ or to a constitutional document.
  std::optional<std::string> batch_id;
};

/// Serializes `state` into `staged`. Enforces the state invariants, the
/// append-only rule for daily logs and the human gate for skills/ and the
/// constitutional documents. Returns the files that will change.
std::vector<WriteRecord> stage_state(const KnowledgeState& state, const fs::path& root,
                                     const GateAuthority& authority, StagedWrite& staged);

/// stage_state + commit, with the batch records on disk as authority.
std::vector<WriteRecord> persist_state(const KnowledgeState& state, const fs::path& root);

struct RenderedConstitution {
  std::string text;
  std::size_t token_count = 0;
  bool over_budget = false;
};

RenderedConstitution render_constitutional(const KnowledgeState& state);

/// Document text as persisted (MEMORY.md gets its principle block
/// re-rendered).
std::string canonical_document(const KnowledgeState& state, std::string_view name);

/// Names of violated invariants; empty when the state is consistent.
std::vector<std::string> check_invariants(const KnowledgeState& state);

/// Throws InvariantViolation naming the first violated invariant.
void validate_state(const KnowledgeState& state);

}  // namespace nfd
