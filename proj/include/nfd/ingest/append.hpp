#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nfd/index/shard.hpp"
#include "nfd/ingest/lexicon.hpp"
#include "nfd/model/types.hpp"

namespace nfd {

struct NewEntry {
  Date date;
  /// Empty means "infer a category tag from the body".
  std::vector<std::string> tags;
  std::string body;
  std::optional<TimeOfDay> timestamp;
  std::map<std::string, std::string> context;
};

/// Appends one entry to the day's log text and to the corpus, and updates
/// the shard when one is given. Earlier bytes of the log are never touched.
/// Throws EmptyBody, InvalidTag, or InvalidArgument when the entry would not
/// read back as written.
EntryId append_entry(KnowledgeState& state, const NewEntry& entry, const CueLexicon& lexicon,
                     IndexShard* shard = nullptr);

}  // namespace nfd
