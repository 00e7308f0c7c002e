#include "nfd/ingest/entry_grammar.hpp"

#include <optional>

#include <fmt/format.h>

#include "nfd/common/text.hpp"

namespace nfd {

namespace {

constexpr std::string_view kCtxOpen = "<!-- ctx";
constexpr std::string_view kCtxClose = "-->";

std::string encode_ctx_value(std::string_view v) {
  std::string out;
  for (char c : v) {
    switch (c) {
      case ' ': out += "%20"; break;
      case '%': out += "%25"; break;
      case '\n': out += "%0A"; break;
      case '\t': out += "%09"; break;
      case '>': out += "%3E"; break;
      case '=': out += "%3D"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string decode_ctx_value(std::string_view v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == '%' && i + 2 < v.size()) {
      std::string hex(v.substr(i + 1, 2));
      char* end = nullptr;
      long code = std::strtol(hex.c_str(), &end, 16);
      if (end == hex.c_str() + 2) {
        out.push_back(static_cast<char>(code));
        i += 2;
        continue;
      }
    }
    out.push_back(v[i]);
  }
  return out;
}

bool parse_ctx_line(std::string_view line, std::map<std::string, std::string>& out) {
  std::string_view t = text::trim(line);
  if (t.substr(0, kCtxOpen.size()) != kCtxOpen || t.size() < kCtxOpen.size() + kCtxClose.size()) return false;
  if (t.substr(t.size() - kCtxClose.size()) != kCtxClose) return false;
  std::string_view inner = t.substr(kCtxOpen.size(), t.size() - kCtxOpen.size() - kCtxClose.size());
  for (const auto& token : text::split(text::trim(inner), ' ')) {
    auto eq = token.find('=');
    if (token.empty() || eq == std::string::npos || eq == 0) continue;
    out[token.substr(0, eq)] = decode_ctx_value(std::string_view(token).substr(eq + 1));
  }
  return true;
}

struct Pending {
  int line = 0;
  ExperientialEntry entry;
  std::vector<std::string> body_lines;
};

}  // namespace

bool is_valid_tag(std::string_view tag) {
  if (tag.empty() || tag[0] < 'A' || tag[0] > 'Z') return false;
  for (char c : tag) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-';
    if (!ok) return false;
  }
  return true;
}

LeadingTags split_leading_tags(std::string_view s) {
  LeadingTags out;
  while (!s.empty() && s.front() == '[') {
    auto close = s.find(']');
    if (close == std::string_view::npos) break;
    std::string_view tag = s.substr(1, close - 1);
    if (!is_valid_tag(tag)) break;
    out.tags.emplace_back(tag);
    s.remove_prefix(close + 1);
  }
  out.rest = s;
  return out;
}

Category categorize(const std::vector<std::string>& tags, std::string_view body, const CueLexicon& lexicon) {
  for (const auto& t : tags) {
    if (auto c = category_of_tag(t)) return *c;
  }
  if (auto c = lexicon.infer(body)) return *c;
  return Category::OperationalRecord;
}

std::string normalize_body(std::string_view body) {
  std::string out;
  for (char c : text::trim(body)) {
    if (c != '\r') out.push_back(c);
  }
  return out;
}

DailyLogParse parse_daily_log(std::string_view content, Date date, const CueLexicon& lexicon) {
  DailyLogParse result;
  std::optional<Pending> current;
  bool skipping = false;
  int sequence = 0;

  auto finish = [&] {
    if (!current) return;
    std::string joined = text::join(current->body_lines, "\n");
    std::string body = normalize_body(joined);
    if (body.empty()) {
      result.warnings.push_back({current->line, "entry has an empty body; ignored"});
    } else {
      ExperientialEntry& e = current->entry;
      e.body = std::move(body);
      e.category = categorize(e.tags, e.body, lexicon);
      e.id = EntryId{date, ++sequence};
      result.entries.push_back(std::move(e));
    }
    current.reset();
  };

  int lineno = 0;
  for (std::string_view line : text::lines(content)) {
    ++lineno;
    if (line.substr(0, 2) == "- ") {
      finish();
      skipping = false;
      std::string_view rest = line.substr(2);
      Pending p;
      p.line = lineno;
      if (rest.size() >= 6 && rest[5] == ' ') {
        if (auto ts = TimeOfDay::parse(rest.substr(0, 5))) {
          p.entry.timestamp = ts;
          rest.remove_prefix(6);
        }
      }
      LeadingTags lt = split_leading_tags(rest);
      if (lt.tags.empty()) {
        result.warnings.push_back({lineno, "entry line has no valid [TAG]; ignored"});
        skipping = true;
        continue;
      }
      p.entry.tags = std::move(lt.tags);
      std::string_view first = lt.rest;
      if (!first.empty() && first.front() == ' ') first.remove_prefix(1);
      p.body_lines.emplace_back(first);
      current = std::move(p);
    } else if (line.substr(0, 2) == "  ") {
      if (current) {
        if (!parse_ctx_line(line, current->entry.context)) current->body_lines.emplace_back(line.substr(2));
      } else if (!skipping) {
        result.warnings.push_back({lineno, "continuation line without an entry; ignored"});
      }
    } else if (text::trim(line).empty()) {
      finish();
      skipping = false;
    } else {
      finish();
      skipping = false;
      result.warnings.push_back({lineno, "prose line ignored"});
    }
  }
  finish();
  return result;
}

std::string format_entry(const ExperientialEntry& entry) {
  std::string out = "- ";
  if (entry.timestamp) out += entry.timestamp->str() + " ";
  for (const auto& t : entry.tags) out += "[" + t + "]";
  auto body_lines = text::lines(entry.body);
  for (std::size_t i = 0; i < body_lines.size(); ++i) {
    if (i == 0) {
      out += " ";
      out += body_lines[i];
      out += "\n";
    } else {
      out += "  ";
      out += body_lines[i];
      out += "\n";
    }
  }
  if (body_lines.empty()) out += "\n";
  if (!entry.context.empty()) {
    out += "  ";
    out += kCtxOpen;
    for (const auto& [k, v] : entry.context) out += fmt::format(" {}={}", k, encode_ctx_value(v));
    out += " ";
    out += kCtxClose;
    out += "\n";
  }
  return out;
}

}  // namespace nfd
