#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfd/crystal/review.hpp"
#include "nfd/model/types.hpp"

namespace nfd {

struct ValueBreakdown {
  double breadth = 0;
  double structure_raw = 0;
  double structure_norm = 0;
  double align = 0;
  double value = 0;
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
};

struct BreadthTerms {
  double category_coverage = 0;
  double volume_saturation = 0;
  double tag_diversity = 0;
  double breadth() const { return (category_coverage + volume_saturation + tag_diversity) / 3.0; }
};

/// Counts every entry, consolidated or not.
BreadthTerms breadth_terms(const ExperientialCorpus& corpus, const EngineConfig& config);
double breadth(const ExperientialCorpus& corpus, const EngineConfig& config);

/// 0.4 validated + 0.2 examples + 0.2 provenance >= min_support + 0.2 conditions.
double section_quality(const ReferenceSection& section, int min_support);

struct StructureScore {
  double raw = 0;
  double norm = 0;
};

StructureScore structure(const std::vector<SkillAsset>& skills, const EngineConfig& config);

/// clamp((confirmed - contradicted) / total, 0, 1); 0 without principles.
double align(const ConstitutionalLayer& constitutional);

ValueBreakdown value(const KnowledgeState& state);

/// delta_structure / entries_consolidated. Throws ZeroConsumption.
double efficiency(const HistoryRecord& record);

struct DateWindow {
  Date from;
  Date to;
  bool contains(Date d) const { return from <= d && d <= to; }
};

struct Rating {
  Date date;
  bool useful = false;
};

struct ProgressionReport {
  DateWindow window;
  std::optional<double> useful_analyses_pct;
  int case_recalls = 0;
  int bias_flags = 0;
  int skill_refs_populated = 0;
  int error_patterns = 0;
  int daily_log_entries = 0;
};

/// Tag counts and the entry count are restricted to the window; skill refs
/// and error patterns describe the current skill layer.
ProgressionReport progression_report(const KnowledgeState& state, const DateWindow& window,
                                     const std::optional<std::vector<Rating>>& ratings = std::nullopt);

/// `[{"date":"YYYY-MM-DD","useful":true}, ...]`; throws ParseError.
std::vector<Rating> ratings_from_json(const nlohmann::json& j);

nlohmann::json value_to_json(const ValueBreakdown& v);
nlohmann::json report_to_json(const ProgressionReport& r);

}  // namespace nfd
