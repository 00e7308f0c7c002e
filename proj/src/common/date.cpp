#include "nfd/common/date.hpp"

#include <chrono>
#include <cstdio>

#include <fmt/format.h>

namespace nfd {

namespace chr = std::chrono;

namespace {

bool parse_fixed_digits(std::string_view text, std::size_t pos, std::size_t count, int& out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    char c = text[i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

chr::year_month_day to_ymd(std::int32_t days) {
  return chr::year_month_day{chr::sys_days{chr::days{days}}};
}

}  // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
  chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  return Date(static_cast<std::int32_t>(chr::sys_days{ymd}.time_since_epoch().count()));
}

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_fixed_digits(text, 0, 4, y) || !parse_fixed_digits(text, 5, 2, m) ||
      !parse_fixed_digits(text, 8, 2, d)) {
    return std::nullopt;
  }
  chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                          chr::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return from_ymd(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

int Date::year() const { return static_cast<int>(to_ymd(days_).year()); }
unsigned Date::month() const { return static_cast<unsigned>(to_ymd(days_).month()); }
unsigned Date::day() const { return static_cast<unsigned>(to_ymd(days_).day()); }

unsigned Date::iso_weekday() const {
  return chr::weekday{chr::sys_days{chr::days{days_}}}.iso_encoding();
}

std::string Date::str() const { return fmt::format("{:04}-{:02}-{:02}", year(), month(), day()); }

std::string Date::compact() const { return fmt::format("{:04}{:02}{:02}", year(), month(), day()); }

std::optional<TimeOfDay> TimeOfDay::parse(std::string_view text) {
  if (text.size() != 5 || text[2] != ':') return std::nullopt;
  int h = 0, m = 0;
  if (!parse_fixed_digits(text, 0, 2, h) || !parse_fixed_digits(text, 3, 2, m)) return std::nullopt;
  if (h > 23 || m > 59) return std::nullopt;
  return TimeOfDay(h * 60 + m);
}

std::string TimeOfDay::str() const { return fmt::format("{:02}:{:02}", minutes_ / 60, minutes_ % 60); }

Timestamp Timestamp::at(Date date, int hour, int minute, int second) {
  return Timestamp(static_cast<std::int64_t>(date.days()) * 86400 + hour * 3600 + minute * 60 + second);
}

std::optional<Timestamp> Timestamp::parse(std::string_view text) {
  auto date = Date::parse(text.substr(0, 10));
  if (!date) return std::nullopt;
  if (text.size() == 10) return at(*date);
  if (text.size() < 19 || (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || text[16] != ':') {
    return std::nullopt;
  }
  int h = 0, m = 0, s = 0;
  if (!parse_fixed_digits(text, 11, 2, h) || !parse_fixed_digits(text, 14, 2, m) ||
      !parse_fixed_digits(text, 17, 2, s)) {
    return std::nullopt;
  }
  if (h > 23 || m > 59 || s > 60) return std::nullopt;
  std::string_view rest = text.substr(19);
  if (!rest.empty() && rest != "Z") return std::nullopt;
  return at(*date, h, m, s);
}

Timestamp Timestamp::now() {
  auto now = chr::time_point_cast<chr::seconds>(chr::system_clock::now());
  return Timestamp(now.time_since_epoch().count());
}

Date Timestamp::date() const {
  std::int64_t days = seconds_ / 86400;
  if (seconds_ % 86400 < 0) --days;
  return Date::from_days(static_cast<std::int32_t>(days));
}

std::string Timestamp::str() const {
  Date d = date();
  std::int64_t rem = seconds_ - static_cast<std::int64_t>(d.days()) * 86400;
  return fmt::format("{}T{:02}:{:02}:{:02}Z", d.str(), rem / 3600, (rem / 60) % 60, rem % 60);
}

}  // namespace nfd
