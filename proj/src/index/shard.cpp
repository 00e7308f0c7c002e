#include "nfd/index/shard.hpp"

#include <algorithm>
#include <set>

#include "nfd/common/error.hpp"
#include "nfd/common/hash.hpp"
#include "nfd/index/tokenizer.hpp"

namespace nfd {

using nlohmann::json;

double IndexShard::average_doc_length() const {
  if (doc_lengths.empty()) return 0.0;
  double total = 0;
  for (const auto& [id, len] : doc_lengths) total += len;
  return total / static_cast<double>(doc_lengths.size());
}

std::uint64_t body_hash(std::string_view body) { return fnv1a64(body); }

void remove_entry(IndexShard& shard, const EntryId& id) {
  if (!shard.contains(id)) return;
  for (auto it = shard.postings.begin(); it != shard.postings.end();) {
    auto& list = it->second;
    list.erase(std::remove_if(list.begin(), list.end(), [&](const Posting& p) { return p.entry_id == id; }),
               list.end());
    it = list.empty() ? shard.postings.erase(it) : std::next(it);
  }
  shard.doc_lengths.erase(id);
  shard.content_hashes.erase(id);
}

void index_entry(IndexShard& shard, const ExperientialEntry& entry) {
  std::uint64_t hash = body_hash(entry.body);
  if (auto it = shard.content_hashes.find(entry.id); it != shard.content_hashes.end()) {
    if (it->second == hash) return;
    remove_entry(shard, entry.id);
  }
  auto tokens = tokenize(entry.body);
  std::map<std::string, int> tf;
  for (const auto& t : tokens) ++tf[t];
  for (const auto& [term, count] : tf) {
    auto& list = shard.postings[term];
    auto pos = std::lower_bound(list.begin(), list.end(), entry.id,
                                [](const Posting& p, const EntryId& id) { return p.entry_id < id; });
    list.insert(pos, Posting{entry.id, count});
  }
  shard.doc_lengths[entry.id] = static_cast<int>(tokens.size());
  shard.content_hashes[entry.id] = hash;
}

IndexShard rebuild_index(const ExperientialCorpus& corpus) {
  IndexShard shard;
  for (const auto& e : corpus.entries) index_entry(shard, e);
  return shard;
}

bool sync_index(IndexShard& shard, const ExperientialCorpus& corpus) {
  IndexShard before = shard;
  std::set<EntryId> live;
  for (const auto& e : corpus.entries) {
    live.insert(e.id);
    index_entry(shard, e);
  }
  std::vector<EntryId> stale;
  for (const auto& [id, len] : shard.doc_lengths) {
    if (!live.count(id)) stale.push_back(id);
  }
  for (const auto& id : stale) remove_entry(shard, id);
  return !(before == shard);
}

json shard_to_json(const IndexShard& shard) {
  json postings = json::object();
  for (const auto& [term, list] : shard.postings) {
    json arr = json::array();
    for (const auto& p : list) arr.push_back(json::array({p.entry_id.str(), p.term_frequency}));
    postings[term] = std::move(arr);
  }
  json docs = json::object();
  for (const auto& [id, len] : shard.doc_lengths) {
    docs[id.str()] = {{"length", len}, {"hash", to_hex(shard.content_hashes.at(id))}};
  }
  return json{{"format", 1}, {"doc_count", shard.doc_count()}, {"docs", docs}, {"postings", postings}};
}

IndexShard shard_from_json(const json& j) {
  auto bad = [](const std::string& why) { return parse_error(kIndexFile, 1, why); };
  IndexShard shard;
  try {
    for (const auto& [key, doc] : j.at("docs").items()) {
      auto id = EntryId::parse(key);
      auto hash = from_hex(doc.at("hash").get<std::string>());
      if (!id || !hash) throw bad("bad document record " + key);
      shard.doc_lengths[*id] = doc.at("length").get<int>();
      shard.content_hashes[*id] = *hash;
    }
    for (const auto& [term, arr] : j.at("postings").items()) {
      auto& list = shard.postings[term];
      for (const auto& p : arr) {
        auto id = EntryId::parse(p.at(0).get<std::string>());
        if (!id || !shard.contains(*id)) throw bad("posting for unknown document in term " + term);
        list.push_back({*id, p.at(1).get<int>()});
      }
      std::sort(list.begin(), list.end(), [](const Posting& a, const Posting& b) { return a.entry_id < b.entry_id; });
    }
    if (j.at("doc_count").get<std::size_t>() != shard.doc_count()) throw bad("doc_count does not match documents");
  } catch (const json::exception& e) {
    throw bad(e.what());
  }
  return shard;
}

IndexShard load_index(const fs::path& root, const ExperientialCorpus& corpus) {
  IndexShard shard;
  if (auto content = try_read_file(root / kIndexFile)) {
    try {
      shard = shard_from_json(json::parse(*content));
    } catch (const std::exception&) {
      return rebuild_index(corpus);
    }
  } else {
    return rebuild_index(corpus);
  }
  sync_index(shard, corpus);
  return shard;
}

}  // namespace nfd
