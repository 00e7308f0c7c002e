#include "nfd/index/search.hpp"

#include <algorithm>
#include <cmath>

#include "nfd/common/error.hpp"
#include "nfd/common/text.hpp"
#include "nfd/index/tokenizer.hpp"

namespace nfd {

namespace {

constexpr std::size_t kSnippetBytes = 160;

bool admitted(const ExperientialEntry& e, const SearchQuery& q) {
  if (q.from && e.id.date < *q.from) return false;
  if (q.to && e.id.date > *q.to) return false;
  for (const auto& t : q.required_tags) {
    if (!e.has_tag(t)) return false;
  }
  for (const auto& t : q.excluded_tags) {
    if (e.has_tag(t)) return false;
  }
  return true;
}

}  // namespace

double decay_factor(Date entry_date, Date as_of, double lambda) {
  double age = std::max(0, days_between(entry_date, as_of));
  return std::exp(-lambda * age);
}

std::string snippet_of(std::string_view body) {
  auto first = text::lines(body);
  std::string_view line = first.empty() ? std::string_view() : first.front();
  return std::string(text::utf8_prefix(line, kSnippetBytes));
}

std::vector<SearchHit> search(const IndexShard& shard, const ExperientialCorpus& corpus, const SearchQuery& query) {
  if (query.limit < 1) throw Error(ErrorCode::InvalidArgument, "limit must be at least 1");

  std::map<EntryId, double> lexical;
  if (text::trim(query.text).empty()) {
    for (const auto& e : corpus.entries) lexical[e.id] = 1.0;
  } else {
    auto terms = tokenize(query.text);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    const double n_docs = static_cast<double>(shard.doc_count());
    const double avgdl = shard.average_doc_length();
    for (const auto& term : terms) {
      auto it = shard.postings.find(term);
      if (it == shard.postings.end()) continue;
      const double df = static_cast<double>(it->second.size());
      const double idf = std::log(1.0 + (n_docs - df + 0.5) / (df + 0.5));
      for (const auto& p : it->second) {
        const double tf = p.term_frequency;
        const double dl = shard.doc_lengths.at(p.entry_id);
        const double norm = avgdl > 0 ? dl / avgdl : 0.0;
        lexical[p.entry_id] += idf * tf * (kBm25K1 + 1) / (tf + kBm25K1 * (1 - kBm25B + kBm25B * norm));
      }
    }
  }

  std::vector<SearchHit> hits;
  for (const auto& [id, score] : lexical) {
    const ExperientialEntry* e = corpus.find(id);
    if (!e || !admitted(*e, query) || score <= 0) continue;
    SearchHit h;
    h.entry_id = id;
    h.lexical_score = score;
    h.decay_factor = decay_factor(id.date, query.as_of, query.decay_lambda);
    h.final_score = score * h.decay_factor;
    h.snippet = snippet_of(e->body);
    hits.push_back(std::move(h));
  }
  std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.final_score != b.final_score) return a.final_score > b.final_score;
    if (a.entry_id.date != b.entry_id.date) return a.entry_id.date > b.entry_id.date;
    return a.entry_id < b.entry_id;
  });
  if (hits.size() > static_cast<std::size_t>(query.limit)) hits.resize(static_cast<std::size_t>(query.limit));
  return hits;
}

}  // namespace nfd
