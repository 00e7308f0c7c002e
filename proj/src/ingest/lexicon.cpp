#include "nfd/ingest/lexicon.hpp"

#include <cctype>

#include <fmt/format.h>

#include "nfd/common/error.hpp"
#include "nfd/common/text.hpp"

namespace nfd {

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '\''; }

/// First whole-word occurrence of `cue` in `hay`, or npos.
std::size_t find_word(std::string_view hay, std::string_view cue) {
  std::size_t pos = 0;
  while ((pos = hay.find(cue, pos)) != std::string_view::npos) {
    bool left_ok = pos == 0 || !is_word_char(hay[pos - 1]);
    std::size_t end = pos + cue.size();
    bool right_ok = end >= hay.size() || !is_word_char(hay[end]);
    if (left_ok && right_ok) return pos;
    ++pos;
  }
  return std::string_view::npos;
}

}  // namespace

CueLexicon CueLexicon::defaults() {
  CueLexicon lex;
  lex.cues[Category::InsightFragment] = {"i've realized", "i have realized", "i’ve realized",
                                         "the key thing about"};
  lex.cues[Category::OperationalRecord] = {"decided to", "i'll go with", "i’ll go with"};
  lex.cues[Category::ReasoningTrace] = {"because", "my reasoning"};
  lex.cues[Category::PatternObservation] = {"every time", "tends to follow"};
  lex.cues[Category::ErrorRecord] = {"i was wrong", "missed"};
  lex.cues[Category::ContextualAnnotation] = {"for context", "background:"};
  return lex;
}

CueLexicon CueLexicon::with_overrides(const nlohmann::json& j) {
  CueLexicon lex = defaults();
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "lexicon.json must hold an object");
  for (const auto& item : j.items()) {
    auto category = parse_category(item.key());
    if (!category) {
      throw Error(ErrorCode::InvalidConfig, fmt::format("lexicon.json: unknown category '{}'", item.key()));
    }
    if (!item.value().is_array()) {
      throw Error(ErrorCode::InvalidConfig, fmt::format("lexicon.json: '{}' must map to a list", item.key()));
    }
    std::vector<std::string> cues;
    for (const auto& cue : item.value()) {
      if (!cue.is_string()) throw Error(ErrorCode::InvalidConfig, "lexicon.json: cues must be strings");
      std::string lowered = text::to_lower(cue.get<std::string>());
      if (!lowered.empty()) cues.push_back(std::move(lowered));
    }
    lex.cues[*category] = std::move(cues);
  }
  return lex;
}

std::optional<Category> CueLexicon::infer(std::string_view body) const {
  std::string hay = text::to_lower(body);
  std::optional<Category> best;
  std::size_t best_pos = std::string::npos;
  std::size_t best_len = 0;
  for (Category c : kAllCategories) {
    auto it = cues.find(c);
    if (it == cues.end()) continue;
    for (const auto& cue : it->second) {
      std::size_t pos = find_word(hay, cue);
      if (pos == std::string::npos) continue;
      if (!best || pos < best_pos || (pos == best_pos && cue.size() > best_len)) {
        best = c;
        best_pos = pos;
        best_len = cue.size();
      }
    }
  }
  return best;
}

}  // namespace nfd
