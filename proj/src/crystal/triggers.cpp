#include "nfd/crystal/triggers.hpp"

#include <charconv>

#include <fmt/format.h>

#include "nfd/common/error.hpp"
#include "nfd/common/text.hpp"

namespace nfd {

using nlohmann::json;

namespace {

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

Error bad_schedule(std::string_view text) {
  return Error(ErrorCode::InvalidConfig, fmt::format("unsupported schedule '{}'", text));
}

}  // namespace

std::string_view trigger_mode_name(TriggerMode m) {
  switch (m) {
    case TriggerMode::Scheduled: return "scheduled";
    case TriggerMode::Threshold: return "threshold";
    case TriggerMode::Event: return "event";
  }
  return "threshold";
}

Schedule parse_schedule(std::string_view input) {
  std::string s = text::to_lower(text::trim(input));
  Schedule out;
  if (s == "manual" || s.empty()) return out;
  if (s == "daily" || s == "@daily") {
    out.kind = Schedule::Kind::Daily;
    return out;
  }
  if (s == "weekly" || s == "@weekly") {
    out.kind = Schedule::Kind::Weekly;
    return out;
  }
  if (s == "monthly" || s == "@monthly") {
    out.kind = Schedule::Kind::Monthly;
    return out;
  }
  std::vector<std::string> fields;
  for (auto& f : text::split(s, ' ')) {
    if (!f.empty()) fields.push_back(std::move(f));
  }
  if (fields.size() == 3 && fields[0] == "every" && (fields[2] == "days" || fields[2] == "day")) {
    auto n = parse_int(fields[1]);
    if (!n || *n < 1) throw bad_schedule(input);
    out.kind = Schedule::Kind::EveryNDays;
    out.every_days = *n;
    return out;
  }
  if (fields.size() != 5 || fields[3] != "*") throw bad_schedule(input);
  auto minute = parse_int(fields[0]);
  auto hour = parse_int(fields[1]);
  if (!minute || !hour || *minute < 0 || *minute > 59 || *hour < 0 || *hour > 23) throw bad_schedule(input);
  out.minute = *minute;
  out.hour = *hour;
  if (fields[2] == "*" && fields[4] == "*") {
    out.kind = Schedule::Kind::Daily;
  } else if (fields[2] == "*") {
    auto dow = parse_int(fields[4]);
    if (!dow || *dow < 0 || *dow > 7) throw bad_schedule(input);
    out.kind = Schedule::Kind::Weekly;
    out.weekday = *dow == 0 ? 7 : *dow;
  } else if (fields[4] == "*") {
    auto dom = parse_int(fields[2]);
    if (!dom || *dom < 1 || *dom > 31) throw bad_schedule(input);
    out.kind = Schedule::Kind::Monthly;
    out.month_day = *dom;
  } else {
    throw bad_schedule(input);
  }
  return out;
}

std::optional<Timestamp> latest_boundary(const Schedule& s, Timestamp now) {
  if (s.kind == Schedule::Kind::Manual) return std::nullopt;
  Date today = now.date();
  for (int back = 0; back <= 400; ++back) {
    Date d = today.plus_days(-back);
    bool match = false;
    switch (s.kind) {
      case Schedule::Kind::Daily: match = true; break;
      case Schedule::Kind::Weekly: match = static_cast<int>(d.iso_weekday()) == s.weekday; break;
      case Schedule::Kind::Monthly: match = static_cast<int>(d.day()) == s.month_day; break;
      case Schedule::Kind::EveryNDays: match = ((d.days() % s.every_days) + s.every_days) % s.every_days == 0; break;
      case Schedule::Kind::Manual: break;
    }
    if (!match) continue;
    Timestamp t = Timestamp::at(d, s.hour, s.minute);
    if (t <= now) return t;
  }
  return std::nullopt;
}

std::vector<TriggerFiring> check_triggers(const KnowledgeState& state, const CrystalStore& store, Timestamp now) {
  std::vector<TriggerFiring> out;
  const auto& entries = state.experiential.entries;

  Schedule schedule = parse_schedule(state.config.schedule);
  if (auto boundary = latest_boundary(schedule, now)) {
    std::optional<Timestamp> reference;
    for (const auto& [id, h] : store.history) {
      if (!reference || h.integrated_at > *reference) reference = h.integrated_at;
    }
    if (!reference && !entries.empty()) reference = Timestamp::at(entries.front().id.date);
    if (reference && *boundary > *reference) {
      out.push_back({TriggerMode::Scheduled,
                     fmt::format("schedule boundary {} passed since {}", boundary->str(), reference->str())});
    }
  }

  std::size_t open = state.experiential.unconsolidated_count();
  if (open > static_cast<std::size_t>(std::max(0, state.config.threshold_trigger))) {
    out.push_back({TriggerMode::Threshold, fmt::format("{} unconsolidated entries exceed threshold {}", open,
                                                       state.config.threshold_trigger)});
  }

  std::optional<Date> since;
  for (const auto& [id, b] : store.batches) {
    if (!since || b.created_at.date() > *since) since = b.created_at.date();
  }
  std::vector<std::string> events;
  for (const auto& e : entries) {
    if (e.consolidated_into || !e.has_tag("EVENT")) continue;
    if (since && e.id.date < *since) continue;
    events.push_back(e.id.str());
  }
  if (!events.empty()) {
    out.push_back({TriggerMode::Event, fmt::format("EVENT entries since last batch: {}", text::join(events, ", "))});
  }
  return out;
}

json firings_to_json(const std::vector<TriggerFiring>& firings) {
  json arr = json::array();
  for (const auto& f : firings) arr.push_back({{"mode", std::string(trigger_mode_name(f.mode))}, {"detail", f.detail}});
  return arr;
}

}  // namespace nfd
