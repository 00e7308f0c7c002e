#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nfd/model/types.hpp"

namespace nfd {

enum class ProposedCategory { SkillReference, ErrorPattern, CaseLibraryEntry, PrincipleUpdate };

std::string_view proposed_category_name(ProposedCategory c);
std::optional<ProposedCategory> parse_proposed_category(std::string_view name);

struct PatternCandidate {
  std::string id;
  /// Sorted, de-duplicated tags shared by every support entry.
  std::vector<std::string> tag_signature;
  std::vector<EntryId> support_entries;
  double score = 0;
  std::string exemplar_text;
  ProposedCategory proposed_category = ProposedCategory::SkillReference;
  /// Tag-only candidate for a group whose bodies are not similar enough to
  /// form a component.
  bool weak = false;
  bool operator==(const PatternCandidate&) const = default;
};

using TermVector = std::map<std::string, int>;

TermVector term_vector(std::string_view text);
double cosine_similarity(const TermVector& a, const TermVector& b);

std::vector<std::string> tag_signature(const std::vector<std::string>& tags);

/// Error tags -> ErrorPattern; CASE/RECALL -> CaseLibraryEntry; PRINCIPLE or
/// a bare INSIGHT signature -> PrincipleUpdate; otherwise SkillReference.
ProposedCategory propose_category(const std::vector<std::string>& signature);

/// Lowercased non-category tags joined by '-', e.g. [BINARY-EVENT, INSIGHT,
/// STRATEGY] -> "binary-event-strategy". Falls back to the category tags.
std::string tag_key(const std::vector<std::string>& signature);

/// Groups by exact tag signature, links entries whose cosine similarity
/// reaches the threshold and reports each connected component of at least
/// min_support entries, scored |C| x mean pairwise similarity. A group that
/// yields no component but is large enough and has a mean similarity below
/// the threshold gives one weak candidate scored |G| x threshold / 2.
/// Ordered by score desc, earliest support entry, signature.
std::vector<PatternCandidate> extract_patterns(const std::vector<ExperientialEntry>& entries,
                                               const EngineConfig& config);

}  // namespace nfd
