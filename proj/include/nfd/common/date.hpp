#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace nfd {

/// Calendar date (proleptic Gregorian), stored as days since 1970-01-01.
class Date {
 public:
  Date() = default;
  static Date from_days(std::int32_t days_since_epoch) { return Date(days_since_epoch); }
  static Date from_ymd(int year, unsigned month, unsigned day);
  /// Accepts exactly `YYYY-MM-DD`.
  static std::optional<Date> parse(std::string_view text);

  std::int32_t days() const { return days_; }
  int year() const;
  unsigned month() const;
  unsigned day() const;
  /// ISO weekday, Monday = 1 ... Sunday = 7.
  unsigned iso_weekday() const;

  std::string str() const;
  /// `YYYYMMDD`, used in batch identifiers.
  std::string compact() const;

  Date plus_days(std::int32_t n) const { return Date(days_ + n); }

  auto operator<=>(const Date&) const = default;

 private:
  explicit Date(std::int32_t d) : days_(d) {}
  std::int32_t days_ = 0;
};

/// Signed day difference `to - from`.
inline std::int32_t days_between(Date from, Date to) { return to.days() - from.days(); }

/// Wall-clock minute of the day, rendered `HH:MM`.
class TimeOfDay {
 public:
  TimeOfDay() = default;
  static std::optional<TimeOfDay> parse(std::string_view text);
  static TimeOfDay from_minutes(int minutes) { return TimeOfDay(minutes); }
  int minutes() const { return minutes_; }
  std::string str() const;
  auto operator<=>(const TimeOfDay&) const = default;

 private:
  explicit TimeOfDay(int m) : minutes_(m) {}
  int minutes_ = 0;
};

/// UTC instant with second resolution, rendered `YYYY-MM-DDTHH:MM:SSZ`.
class Timestamp {
 public:
  Timestamp() = default;
  static Timestamp from_seconds(std::int64_t s) { return Timestamp(s); }
  static Timestamp at(Date date, int hour = 0, int minute = 0, int second = 0);
  /// Accepts `YYYY-MM-DDTHH:MM:SSZ`, `YYYY-MM-DDTHH:MM:SS` or a bare date.
  static std::optional<Timestamp> parse(std::string_view text);
  static Timestamp now();

  std::int64_t seconds() const { return seconds_; }
  Date date() const;
  std::string str() const;
  auto operator<=>(const Timestamp&) const = default;

 private:
  explicit Timestamp(std::int64_t s) : seconds_(s) {}
  std::int64_t seconds_ = 0;
};

}  // namespace nfd
