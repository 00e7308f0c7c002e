#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nfd/index/shard.hpp"
#include "nfd/model/types.hpp"

namespace nfd {

inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;

struct SearchQuery {
  std::string text;
  std::set<std::string> required_tags;
  std::set<std::string> excluded_tags;
  std::optional<Date> from;
  std::optional<Date> to;
  int limit = 10;
  Date as_of;
  double decay_lambda = 0.01;
};

struct SearchHit {
  EntryId entry_id;
  double lexical_score = 0;
  double decay_factor = 1;
  double final_score = 0;
  std::string snippet;
};

/// exp(-lambda * age), age clamped at zero for entries dated after `as_of`.
double decay_factor(Date entry_date, Date as_of, double lambda);

/// BM25 over the shard's global statistics; the tag and date filters only
/// restrict which entries may be returned. A blank query scores every
/// admitted entry 1 so results are ordered by recency alone.
/// Throws InvalidArgument when limit < 1.
std::vector<SearchHit> search(const IndexShard& shard, const ExperientialCorpus& corpus, const SearchQuery& query);

std::string snippet_of(std::string_view body);

}  // namespace nfd
