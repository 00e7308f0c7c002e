#include "nfd/crystal/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nfd/common/text.hpp"
#include "nfd/index/tokenizer.hpp"

namespace nfd {

namespace {

struct Component {
  std::vector<std::size_t> members;
};

// Mean over all unordered pairs; a single entry counts as self-similar.
double mean_pairwise(const std::vector<std::size_t>& members, const std::vector<std::vector<double>>& sim) {
  if (members.size() < 2) return 1.0;
  double total = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      total += sim[members[i]][members[j]];
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

std::size_t exemplar_of(const std::vector<std::size_t>& members, const std::vector<std::vector<double>>& sim) {
  std::size_t best = members.front();
  double best_mean = -1;
  for (std::size_t m : members) {
    double total = 0;
    for (std::size_t o : members) {
      if (o != m) total += sim[m][o];
    }
    double mean = members.size() > 1 ? total / static_cast<double>(members.size() - 1) : 1.0;
    if (mean > best_mean) {
      best_mean = mean;
      best = m;
    }
  }
  return best;
}

}  // namespace

std::string_view proposed_category_name(ProposedCategory c) {
  switch (c) {
    case ProposedCategory::SkillReference: return "SkillReference";
    case ProposedCategory::ErrorPattern: return "ErrorPattern";
    case ProposedCategory::CaseLibraryEntry: return "CaseLibraryEntry";
    case ProposedCategory::PrincipleUpdate: return "PrincipleUpdate";
  }
  return "SkillReference";
}

std::optional<ProposedCategory> parse_proposed_category(std::string_view name) {
  for (auto c : {ProposedCategory::SkillReference, ProposedCategory::ErrorPattern, ProposedCategory::CaseLibraryEntry,
                 ProposedCategory::PrincipleUpdate}) {
    if (proposed_category_name(c) == name) return c;
  }
  return std::nullopt;
}

TermVector term_vector(std::string_view text) {
  TermVector v;
  for (auto& t : tokenize(text)) ++v[t];
  return v;
}

double cosine_similarity(const TermVector& a, const TermVector& b) {
  double dot = 0, na = 0, nb = 0;
  for (const auto& [t, c] : a) {
    na += static_cast<double>(c) * c;
    if (auto it = b.find(t); it != b.end()) dot += static_cast<double>(c) * it->second;
  }
  for (const auto& [t, c] : b) nb += static_cast<double>(c) * c;
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::string> tag_signature(const std::vector<std::string>& tags) {
  std::vector<std::string> sig = tags;
  std::sort(sig.begin(), sig.end());
  sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
  return sig;
}

ProposedCategory propose_category(const std::vector<std::string>& signature) {
  auto has = [&](std::string_view t) { return std::find(signature.begin(), signature.end(), t) != signature.end(); };
  for (const auto& t : signature) {
    if (category_of_tag(t) == Category::ErrorRecord) return ProposedCategory::ErrorPattern;
  }
  if (has("CASE") || has("RECALL")) return ProposedCategory::CaseLibraryEntry;
  if (has("PRINCIPLE") || (signature.size() == 1 && signature.front() == "INSIGHT")) {
    return ProposedCategory::PrincipleUpdate;
  }
  return ProposedCategory::SkillReference;
}

std::string tag_key(const std::vector<std::string>& signature) {
  std::vector<std::string> plain, categories;
  for (const auto& t : tag_signature(signature)) {
    (category_of_tag(t) ? categories : plain).push_back(text::to_lower(t));
  }
  return text::join(plain.empty() ? categories : plain, "-");
}

std::vector<PatternCandidate> extract_patterns(const std::vector<ExperientialEntry>& entries,
                                               const EngineConfig& config) {
  const double threshold = config.similarity_threshold;
  const std::size_t min_support = static_cast<std::size_t>(std::max(1, config.min_support));

  std::map<std::vector<std::string>, std::vector<const ExperientialEntry*>> groups;
  for (const auto& e : entries) groups[tag_signature(e.tags)].push_back(&e);

  std::vector<PatternCandidate> out;
  for (auto& [signature, members] : groups) {
    std::sort(members.begin(), members.end(),
              [](const ExperientialEntry* a, const ExperientialEntry* b) { return a->id < b->id; });
    const std::size_t n = members.size();
    std::vector<TermVector> vectors;
    vectors.reserve(n);
    for (const auto* e : members) vectors.push_back(term_vector(e->body));
    std::vector<std::vector<double>> sim(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) sim[i][j] = sim[j][i] = cosine_similarity(vectors[i], vectors[j]);
    }

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (sim[i][j] >= threshold) parent[find(i)] = find(j);
      }
    }
    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t i = 0; i < n; ++i) components[find(i)].push_back(i);

    auto make = [&](const std::vector<std::size_t>& idx, double score, bool weak) {
      PatternCandidate c;
      c.tag_signature = signature;
      for (auto i : idx) c.support_entries.push_back(members[i]->id);
      c.score = score;
      c.exemplar_text = members[exemplar_of(idx, sim)]->body;
      c.proposed_category = propose_category(signature);
      c.weak = weak;
      return c;
    };

    bool emitted = false;
    for (const auto& [root, idx] : components) {
      if (idx.size() < min_support) continue;
      double score = static_cast<double>(idx.size()) * mean_pairwise(idx, sim);
      if (score <= 0) continue;
      out.push_back(make(idx, score, false));
      emitted = true;
    }
    if (!emitted && n >= min_support) {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), 0);
      if (mean_pairwise(all, sim) < threshold) {
        double score = static_cast<double>(n) * threshold / 2.0;
        if (score > 0) out.push_back(make(all, score, true));
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const PatternCandidate& a, const PatternCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.support_entries.front() != b.support_entries.front()) return a.support_entries.front() < b.support_entries.front();
    return a.tag_signature < b.tag_signature;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = "c" + std::to_string(i + 1);
  return out;
}

}  // namespace nfd
