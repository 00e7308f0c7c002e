#include "nfd/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "nfd/common/error.hpp"
#include "nfd/model/skill.hpp"

namespace nfd {

using nlohmann::json;

BreadthTerms breadth_terms(const ExperientialCorpus& corpus, const EngineConfig& config) {
  BreadthTerms t;
  if (corpus.entries.empty()) return t;
  std::set<Category> categories;
  std::map<std::string, std::size_t> tag_counts;
  std::size_t occurrences = 0;
  for (const auto& e : corpus.entries) {
    categories.insert(e.category);
    for (const auto& tag : e.tags) {
      ++tag_counts[tag];
      ++occurrences;
    }
  }
  t.category_coverage = static_cast<double>(categories.size()) / static_cast<double>(kAllCategories.size());
  t.volume_saturation = std::min(1.0, static_cast<double>(corpus.entries.size()) / config.n_sat);
  if (tag_counts.size() > 1) {
    double h = 0;
    for (const auto& [tag, n] : tag_counts) {
      double p = static_cast<double>(n) / static_cast<double>(occurrences);
      h -= p * std::log(p);
    }
    t.tag_diversity = std::clamp(h / std::log(static_cast<double>(tag_counts.size())), 0.0, 1.0);
  }
  return t;
}

double breadth(const ExperientialCorpus& corpus, const EngineConfig& config) {
  return breadth_terms(corpus, config).breadth();
}

double section_quality(const ReferenceSection& s, int min_support) {
  double q = 0;
  if (s.flags.validated) q += 0.4;
  if (s.flags.has_examples) q += 0.2;
  if (s.provenance.size() >= static_cast<std::size_t>(min_support)) q += 0.2;
  if (s.flags.has_conditions) q += 0.2;
  return q;
}

StructureScore structure(const std::vector<SkillAsset>& skills, const EngineConfig& config) {
  StructureScore s;
  for (const auto& skill : skills) {
    for (const auto& section : skill.sections()) s.raw += section_quality(section, config.min_support);
  }
  s.norm = config.s_sat > 0 ? std::min(1.0, s.raw / config.s_sat) : 0.0;
  return s;
}

double align(const ConstitutionalLayer& constitutional) {
  const auto& ps = constitutional.principles;
  if (ps.empty()) return 0.0;
  double confirmed = 0, contradicted = 0;
  for (const auto& p : ps) {
    if (p.status == PrincipleStatus::Confirmed) confirmed += 1;
    if (p.status == PrincipleStatus::Contradicted) contradicted += 1;
  }
  return std::clamp((confirmed - contradicted) / static_cast<double>(ps.size()), 0.0, 1.0);
}

ValueBreakdown value(const KnowledgeState& state) {
  const auto& c = state.config;
  ValueBreakdown v;
  v.alpha = c.alpha;
  v.beta = c.beta;
  v.gamma = c.gamma;
  v.breadth = breadth(state.experiential, c);
  auto s = structure(state.skills, c);
  v.structure_raw = s.raw;
  v.structure_norm = s.norm;
  v.align = align(state.constitutional);
  v.value = c.alpha * v.breadth + c.beta * v.structure_norm + c.gamma * v.align;
  return v;
}

double efficiency(const HistoryRecord& record) {
  if (record.entries_consolidated <= 0) {
    throw Error(ErrorCode::ZeroConsumption, "batch " + record.batch_id + " consolidated no entries");
  }
  return record.delta_structure / record.entries_consolidated;
}

ProgressionReport progression_report(const KnowledgeState& state, const DateWindow& window,
                                     const std::optional<std::vector<Rating>>& ratings) {
  ProgressionReport r;
  r.window = window;
  for (const auto& e : state.experiential.entries) {
    if (!window.contains(e.id.date)) continue;
    ++r.daily_log_entries;
    if (e.has_tag("RECALL")) ++r.case_recalls;
    if (e.has_tag("BIAS-FLAG")) ++r.bias_flags;
  }
  for (const auto& skill : state.skills) {
    for (const auto& [file, content] : skill.references) {
      if (is_populated_reference(content)) ++r.skill_refs_populated;
    }
    for (const auto& section : skill.sections()) {
      if (section.flags.validated && section.kind == "ErrorPattern") ++r.error_patterns;
    }
  }
  if (ratings) {
    int total = 0, useful = 0;
    for (const auto& rating : *ratings) {
      if (!window.contains(rating.date)) continue;
      ++total;
      if (rating.useful) ++useful;
    }
    if (total > 0) r.useful_analyses_pct = 100.0 * useful / total;
  }
  return r;
}

std::vector<Rating> ratings_from_json(const json& j) {
  std::vector<Rating> out;
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "ratings: expected an array");
  for (const auto& r : j) {
    if (!r.is_object() || !r.contains("date") || !r.contains("useful") || !r["date"].is_string() ||
        !r["useful"].is_boolean()) {
      throw Error(ErrorCode::ParseError, "ratings: each item needs date and useful");
    }
    auto d = Date::parse(r["date"].get<std::string>());
    if (!d) throw Error(ErrorCode::ParseError, "ratings: bad date");
    out.push_back({*d, r["useful"].get<bool>()});
  }
  return out;
}

json value_to_json(const ValueBreakdown& v) {
  return json{{"breadth", v.breadth},         {"structure_raw", v.structure_raw},
              {"structure_norm", v.structure_norm}, {"align", v.align},
              {"value", v.value},             {"weights", {{"alpha", v.alpha}, {"beta", v.beta}, {"gamma", v.gamma}}}};
}

json report_to_json(const ProgressionReport& r) {
  return json{{"window", {{"from", r.window.from.str()}, {"to", r.window.to.str()}}},
              {"useful_analyses_pct", r.useful_analyses_pct ? json(*r.useful_analyses_pct) : json(nullptr)},
              {"case_recalls", r.case_recalls},
              {"bias_flags", r.bias_flags},
              {"skill_refs_populated", r.skill_refs_populated},
              {"error_patterns", r.error_patterns},
              {"daily_log_entries", r.daily_log_entries}};
}

}  // namespace nfd
