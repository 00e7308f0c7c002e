#include "nfd/ingest/append.hpp"

#include <algorithm>
#include <regex>

#include <fmt/format.h>

#include "nfd/common/error.hpp"
#include "nfd/common/text.hpp"
#include "nfd/ingest/entry_grammar.hpp"

namespace nfd {

EntryId append_entry(KnowledgeState& state, const NewEntry& request, const CueLexicon& lexicon, IndexShard* shard) {
  std::string body = normalize_body(request.body);
  if (body.empty()) throw Error(ErrorCode::EmptyBody, "entry body is empty");
  for (const auto& t : request.tags) {
    if (!is_valid_tag(t)) throw Error(ErrorCode::InvalidTag, fmt::format("invalid tag '{}'", t));
  }
  static const std::regex context_key("[a-z0-9_]+");
  for (const auto& [k, v] : request.context) {
    if (!std::regex_match(k, context_key)) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("invalid context key '{}'", k));
    }
  }

  ExperientialEntry entry;
  entry.tags = request.tags;
  entry.body = body;
  entry.timestamp = request.timestamp;
  entry.context = request.context;
  entry.category = categorize(entry.tags, entry.body, lexicon);
  if (entry.tags.empty()) entry.tags.emplace_back(category_tag(entry.category));

  auto& corpus = state.experiential;
  std::string& log = corpus.logs[request.date];
  std::string updated = log;
  if (!updated.empty() && updated.back() != '\n') updated.push_back('\n');
  updated += format_entry(entry);

  auto first = std::lower_bound(corpus.entries.begin(), corpus.entries.end(), EntryId{request.date, 0},
                                [](const ExperientialEntry& e, const EntryId& k) { return e.id < k; });
  auto last = std::lower_bound(first, corpus.entries.end(), EntryId{request.date.plus_days(1), 0},
                               [](const ExperientialEntry& e, const EntryId& k) { return e.id < k; });
  std::size_t existing = static_cast<std::size_t>(last - first);

  auto reparsed = parse_daily_log(updated, request.date, lexicon);
  entry.id = EntryId{request.date, static_cast<int>(existing) + 1};
  if (reparsed.entries.size() != existing + 1 || !(reparsed.entries.back() == entry)) {
    if (log.empty()) corpus.logs.erase(request.date);
    throw Error(ErrorCode::InvalidArgument, "entry would not read back as written (body resembles log syntax)");
  }
  log = std::move(updated);
  corpus.entries.insert(last, entry);
  if (shard) index_entry(*shard, entry);
  return entry.id;
}

}  // namespace nfd
