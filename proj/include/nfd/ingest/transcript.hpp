#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nfd/index/shard.hpp"
#include "nfd/ingest/lexicon.hpp"
#include "nfd/model/types.hpp"

namespace nfd {

enum class Speaker { User, Agent };

struct Turn {
  Speaker speaker = Speaker::User;
  std::string text;
};

struct InteractionTranscript {
  std::string session_id;
  Date date;
  std::vector<Turn> turns;
};

/// JSON Lines: a header `{"session_id":..., "date":"YYYY-MM-DD"}` followed
/// by one `{"speaker":"user"|"agent","text":...}` object per turn.
/// Throws ParseError naming the offending line.
InteractionTranscript parse_transcript(std::string_view jsonl, std::string_view source = "transcript");

/// Maps an interaction to experiential entries. Returned entries carry no
/// id yet; append_entry assigns it.
class ExperienceExtractor {
 public:
  virtual ~ExperienceExtractor() = default;
  virtual std::vector<ExperientialEntry> extract(const InteractionTranscript& transcript,
                                                 const CueLexicon& lexicon) const = 0;
};

/// Explicit leading tags win for any speaker; untagged user turns are kept
/// when a cue phrase fires; untagged agent turns are dropped.
class RuleBasedExtractor : public ExperienceExtractor {
 public:
  std::vector<ExperientialEntry> extract(const InteractionTranscript& transcript,
                                         const CueLexicon& lexicon) const override;
};

std::vector<ExperientialEntry> extract_from_transcript(const InteractionTranscript& transcript,
                                                       const CueLexicon& lexicon);

/// Extracts and appends; returns the new ids in order.
std::vector<EntryId> ingest_transcript(KnowledgeState& state, const InteractionTranscript& transcript,
                                       const CueLexicon& lexicon, IndexShard* shard = nullptr,
                                       const ExperienceExtractor& extractor = RuleBasedExtractor());

}  // namespace nfd
