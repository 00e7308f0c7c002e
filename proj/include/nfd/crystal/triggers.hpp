#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nfd/crystal/store.hpp"
#include "nfd/model/types.hpp"

namespace nfd {

enum class TriggerMode { Scheduled, Threshold, Event };

std::string_view trigger_mode_name(TriggerMode m);

struct TriggerFiring {
  TriggerMode mode = TriggerMode::Threshold;
  std::string detail;
  bool operator==(const TriggerFiring&) const = default;
};

/// Parsed form of EngineConfig::schedule. Accepted spellings:
///   manual
///   daily | @daily | weekly | @weekly | monthly | @monthly
///   every N days
///   "M H * * *", "M H * * DOW", "M H DOM * *"   (cron subset, UTC)
struct Schedule {
  enum class Kind { Manual, Daily, Weekly, Monthly, EveryNDays };
  Kind kind = Kind::Manual;
  int minute = 0;
  int hour = 0;
  /// ISO weekday 1..7 for Weekly.
  int weekday = 7;
  /// 1..31 for Monthly.
  int month_day = 1;
  int every_days = 1;
};

/// Throws InvalidConfig.
Schedule parse_schedule(std::string_view text);

/// Most recent schedule boundary at or before `now`; nullopt for manual.
std::optional<Timestamp> latest_boundary(const Schedule& schedule, Timestamp now);

/// Scheduled: a boundary passed since the last integration (or since the
/// first entry's day when nothing was integrated yet).
/// Threshold: more unconsolidated entries than threshold_trigger.
/// Event: an unconsolidated entry tagged EVENT dated on or after the day
/// the latest batch was opened (any such entry when there is no batch).
std::vector<TriggerFiring> check_triggers(const KnowledgeState& state, const CrystalStore& store, Timestamp now);

nlohmann::json firings_to_json(const std::vector<TriggerFiring>& firings);

}  // namespace nfd
