#include "nfd/model/principles.hpp"

#include <fmt/format.h>

#include "nfd/common/text.hpp"

namespace nfd {

namespace {

bool parse_line(std::string_view line, Principle& out) {
  if (line.substr(0, 3) != "- [") return false;
  auto close = line.find(']');
  if (close == std::string_view::npos) return false;
  std::string_view head = line.substr(3, close - 3);
  auto bar = head.find('|');
  if (bar == std::string_view::npos) return false;
  auto status = parse_principle_status(head.substr(bar + 1));
  if (!status || bar == 0) return false;
  out.id = std::string(head.substr(0, bar));
  out.status = *status;
  std::string_view rest = text::trim(line.substr(close + 1));
  if (!rest.empty() && rest.back() == ')') {
    auto open = rest.rfind(" (");
    if (open != std::string_view::npos) {
      std::string_view meta = rest.substr(open + 2, rest.size() - open - 3);
      bool recognized = meta.substr(0, 7) == "origin:" || meta.substr(0, 8) == "sources:";
      if (recognized) {
        for (const auto& part : text::split(meta, ';')) {
          std::string_view p = text::trim(part);
          if (p == "origin: user") {
            out.user_origin = true;
          } else if (p.substr(0, 8) == "sources:") {
            for (const auto& id_text : text::split(p.substr(8), ',')) {
              if (auto id = EntryId::parse(text::trim(id_text))) out.source_entries.push_back(*id);
            }
          }
        }
        rest = text::trim(rest.substr(0, open));
      }
    }
  }
  out.text = std::string(rest);
  return !out.text.empty();
}

}  // namespace

PrincipleBlock parse_principles(std::string_view memory_text) {
  PrincipleBlock block;
  bool inside = false;
  int lineno = 0;
  for (std::string_view line : text::lines(memory_text)) {
    ++lineno;
    std::string_view t = text::trim(line);
    if (t == kPrinciplesBegin) {
      inside = true;
      continue;
    }
    if (t == kPrinciplesEnd) {
      inside = false;
      continue;
    }
    if (!inside || t.empty()) continue;
    Principle p;
    if (parse_line(t, p)) {
      block.principles.push_back(std::move(p));
    } else {
      block.warnings.emplace_back(lineno, "unrecognized line in principle block");
    }
  }
  return block;
}

std::string render_principle(const Principle& p) {
  std::string out = fmt::format("- [{}|{}] {}", p.id, status_name(p.status), p.text);
  std::vector<std::string> meta;
  if (p.user_origin) meta.emplace_back("origin: user");
  if (!p.source_entries.empty()) {
    std::vector<std::string> ids;
    for (const auto& id : p.source_entries) ids.push_back(id.str());
    meta.push_back("sources: " + text::join(ids, ", "));
  }
  if (!meta.empty()) out += " (" + text::join(meta, "; ") + ")";
  return out;
}

std::string splice_principles(std::string_view memory_text, const std::vector<Principle>& principles) {
  std::string rendered;
  for (const auto& p : principles) rendered += render_principle(p) + "\n";

  auto begin = memory_text.find(kPrinciplesBegin);
  auto end = begin == std::string_view::npos ? std::string_view::npos : memory_text.find(kPrinciplesEnd, begin);
  if (begin == std::string_view::npos || end == std::string_view::npos) {
    if (principles.empty()) return text::canonical(memory_text);
    std::string out = text::canonical(memory_text);
    if (!out.empty()) out += "\n";
    out += fmt::format("## Principles\n\n{}\n{}{}\n", kPrinciplesBegin, rendered, kPrinciplesEnd);
    return out;
  }
  std::string out(memory_text.substr(0, begin + kPrinciplesBegin.size()));
  out += "\n";
  out += rendered;
  out += memory_text.substr(end);
  return text::canonical(out);
}

std::string next_principle_id(const std::vector<Principle>& principles) {
  int max_id = 0;
  for (const auto& p : principles) {
    if (p.id.size() > 2 && p.id.substr(0, 2) == "P-") {
      try {
        max_id = std::max(max_id, std::stoi(p.id.substr(2)));
      } catch (...) {
      }
    }
  }
  return fmt::format("P-{:04}", max_id + 1);
}

}  // namespace nfd
