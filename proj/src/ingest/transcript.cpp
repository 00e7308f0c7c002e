#include "nfd/ingest/transcript.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include "nfd/common/error.hpp"
#include "nfd/common/text.hpp"
#include "nfd/ingest/append.hpp"
#include "nfd/ingest/entry_grammar.hpp"

namespace nfd {

using nlohmann::json;

InteractionTranscript parse_transcript(std::string_view jsonl, std::string_view source) {
  InteractionTranscript t;
  bool have_header = false;
  int lineno = 0;
  for (std::string_view line : text::lines(jsonl)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      throw parse_error(source, lineno, "malformed JSON line");
    }
    if (!j.is_object()) throw parse_error(source, lineno, "expected a JSON object");
    if (!have_header) {
      if (!j.contains("session_id") || !j.contains("date") || !j["session_id"].is_string() || !j["date"].is_string()) {
        throw parse_error(source, lineno, "first line must be a {session_id, date} header");
      }
      auto date = Date::parse(j["date"].get<std::string>());
      if (!date) throw parse_error(source, lineno, "header date must be YYYY-MM-DD");
      t.session_id = j["session_id"].get<std::string>();
      t.date = *date;
      have_header = true;
      continue;
    }
    if (!j.contains("speaker") || !j.contains("text") || !j["speaker"].is_string() || !j["text"].is_string()) {
      throw parse_error(source, lineno, "turn needs string fields speaker and text");
    }
    std::string speaker = text::to_lower(j["speaker"].get<std::string>());
    Turn turn;
    if (speaker == "user") {
      turn.speaker = Speaker::User;
    } else if (speaker == "agent") {
      turn.speaker = Speaker::Agent;
    } else {
      throw parse_error(source, lineno, "speaker must be user or agent");
    }
    turn.text = j["text"].get<std::string>();
    t.turns.push_back(std::move(turn));
  }
  if (!have_header) throw parse_error(source, 1, "missing header line");
  if (t.turns.empty()) throw parse_error(source, lineno, "transcript has no turns");
  return t;
}

std::vector<ExperientialEntry> RuleBasedExtractor::extract(const InteractionTranscript& transcript,
                                                           const CueLexicon& lexicon) const {
  std::vector<ExperientialEntry> out;
  for (std::size_t i = 0; i < transcript.turns.size(); ++i) {
    const Turn& turn = transcript.turns[i];
    std::string_view text = text::trim(turn.text);
    LeadingTags lead = split_leading_tags(text);
    ExperientialEntry e;
    if (!lead.tags.empty()) {
      e.body = normalize_body(lead.rest);
      e.tags = std::move(lead.tags);
      e.category = categorize(e.tags, e.body, lexicon);
    } else if (turn.speaker == Speaker::User) {
      auto cued = lexicon.infer(text);
      if (!cued) continue;
      e.body = normalize_body(text);
      e.category = *cued;
      e.tags.emplace_back(category_tag(*cued));
    } else {
      continue;
    }
    if (e.body.empty()) continue;
    e.id.date = transcript.date;
    e.context["session_id"] = transcript.session_id;
    e.context["turn"] = std::to_string(i + 1);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ExperientialEntry> extract_from_transcript(const InteractionTranscript& transcript,
                                                       const CueLexicon& lexicon) {
  return RuleBasedExtractor().extract(transcript, lexicon);
}

std::vector<EntryId> ingest_transcript(KnowledgeState& state, const InteractionTranscript& transcript,
                                       const CueLexicon& lexicon, IndexShard* shard,
                                       const ExperienceExtractor& extractor) {
  std::vector<EntryId> ids;
  for (const auto& e : extractor.extract(transcript, lexicon)) {
    NewEntry req{transcript.date, e.tags, e.body, std::nullopt, e.context};
    ids.push_back(append_entry(state, req, lexicon, shard));
  }
  return ids;
}

}  // namespace nfd
