#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfd/common/fs.hpp"
#include "nfd/model/types.hpp"

namespace nfd {

inline constexpr const char* kIndexFile = "memory/index/shard.json";

struct Posting {
  EntryId entry_id;
  int term_frequency = 0;
  bool operator==(const Posting&) const = default;
};

/// Inverted index over entry bodies. Posting lists are kept sorted by entry
/// id so incremental maintenance and a full rebuild give the same shard.
struct IndexShard {
  std::map<std::string, std::vector<Posting>> postings;
  std::map<EntryId, int> doc_lengths;
  std::map<EntryId, std::uint64_t> content_hashes;

  std::size_t doc_count() const { return doc_lengths.size(); }
  double average_doc_length() const;
  bool contains(const EntryId& id) const { return doc_lengths.count(id) > 0; }
  bool operator==(const IndexShard&) const = default;
};

std::uint64_t body_hash(std::string_view body);

/// No-op when the entry is indexed with the same body hash; replaces the
/// old postings when the hash differs.
void index_entry(IndexShard& shard, const ExperientialEntry& entry);
void remove_entry(IndexShard& shard, const EntryId& id);

IndexShard rebuild_index(const ExperientialCorpus& corpus);

/// Brings the shard in line with the corpus. Returns true if anything changed.
bool sync_index(IndexShard& shard, const ExperientialCorpus& corpus);

nlohmann::json shard_to_json(const IndexShard& shard);
/// Throws ParseError on a malformed document.
IndexShard shard_from_json(const nlohmann::json& j);

/// Reads memory/index/shard.json and syncs it with the corpus; a missing or
/// unreadable shard is rebuilt.
IndexShard load_index(const fs::path& root, const ExperientialCorpus& corpus);

}  // namespace nfd
