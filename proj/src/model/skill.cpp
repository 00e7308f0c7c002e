#include "nfd/model/skill.hpp"

#include <algorithm>

#include "nfd/common/hash.hpp"
#include "nfd/common/text.hpp"

namespace nfd {

namespace {

constexpr std::string_view kMarkerOpen = "<!-- nfd:section";

bool parse_marker(std::string_view line, SectionMarker& out) {
  line = text::trim(line);
  if (line.substr(0, kMarkerOpen.size()) != kMarkerOpen) return false;
  if (line.size() < 3 || line.substr(line.size() - 3) != "-->") return false;
  std::string_view body = line.substr(kMarkerOpen.size(), line.size() - kMarkerOpen.size() - 3);
  for (const auto& token : text::split(text::trim(body), ' ')) {
    auto eq = token.find('=');
    if (token.empty() || eq == std::string::npos) continue;
    out[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return true;
}

enum class Sub { None, Conditions, Examples, Provenance, Other };

Sub subsection_of(std::string_view heading) {
  std::string h = text::to_lower(text::trim(heading));
  if (h == "conditions") return Sub::Conditions;
  if (h == "examples") return Sub::Examples;
  if (h == "provenance") return Sub::Provenance;
  return Sub::Other;
}

}  // namespace

std::string render_section_marker(const SectionMarker& marker) {
  std::string out(kMarkerOpen);
  for (const auto& [k, v] : marker) {
    out += ' ';
    out += k;
    out += '=';
    out += v;
  }
  out += " -->";
  return out;
}

std::vector<ReferenceSection> parse_reference_sections(std::string_view file, std::string_view content) {
  std::vector<ReferenceSection> sections;
  Sub sub = Sub::None;
  for (std::string_view line : text::lines(content)) {
    if (line.substr(0, 3) == "## ") {
      ReferenceSection s;
      s.file = std::string(file);
      s.heading = std::string(text::trim(line.substr(3)));
      sections.push_back(std::move(s));
      sub = Sub::None;
      continue;
    }
    if (sections.empty()) continue;
    ReferenceSection& cur = sections.back();
    if (line.substr(0, 4) == "### ") {
      sub = subsection_of(line.substr(4));
      continue;
    }
    SectionMarker marker;
    if (parse_marker(line, marker)) {
      cur.flags.validated = marker["validated"] == "true";
      cur.flags.decontextualized = marker["decontextualized"] == "true";
      cur.kind = marker["kind"];
      cur.batch_id = marker["batch"];
      continue;
    }
    std::string_view trimmed = text::trim(line);
    if (trimmed.empty()) continue;
    if (trimmed != kConditionsStub) cur.populated = true;
    switch (sub) {
      case Sub::Conditions:
        if (trimmed != kConditionsStub) cur.flags.has_conditions = true;
        break;
      case Sub::Examples:
        if (line.substr(0, 2) == "- ") cur.flags.has_examples = true;
        break;
      case Sub::Provenance:
        if (line.substr(0, 2) == "- ") {
          std::string_view rest = text::trim(line.substr(2));
          auto id = EntryId::parse(rest.substr(0, std::min<std::size_t>(rest.size(), 15)));
          if (id) cur.provenance.push_back(*id);
        }
        break;
      default:
        break;
    }
  }
  return sections;
}

bool is_populated_reference(std::string_view content) {
  auto sections = parse_reference_sections("", content);
  return std::any_of(sections.begin(), sections.end(), [](const auto& s) { return s.populated; });
}

std::vector<ReferenceSection> SkillAsset::sections() const {
  std::vector<ReferenceSection> out;
  for (const auto& [file, content] : references) {
    auto parsed = parse_reference_sections(file, content);
    out.insert(out.end(), parsed.begin(), parsed.end());
  }
  return out;
}

std::vector<EntryId> SkillAsset::provenance() const {
  std::vector<EntryId> out;
  for (const auto& s : sections()) {
    for (const auto& id : s.provenance) {
      if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
  }
  return out;
}

SectionFlags SkillAsset::flags() const {
  auto secs = sections();
  if (secs.empty()) return {};
  SectionFlags f{true, true, true, true};
  for (const auto& s : secs) {
    f.validated = f.validated && s.flags.validated;
    f.decontextualized = f.decontextualized && s.flags.decontextualized;
    f.has_examples = f.has_examples && s.flags.has_examples;
    f.has_conditions = f.has_conditions && s.flags.has_conditions;
  }
  return f;
}

std::uint64_t skill_content_hash(const SkillAsset& skill) {
  std::string buf;
  buf += "SKILL.md\n";
  buf += skill.instructions;
  buf.push_back('\0');
  for (const auto& [name, content] : skill.references) {
    buf += "references/" + name + "\n";
    buf += content;
    buf.push_back('\0');
  }
  for (const auto& [name, content] : skill.scripts) {
    buf += "scripts/" + name + "\n";
    buf += content;
    buf.push_back('\0');
  }
  return fnv1a64(buf);
}

}  // namespace nfd
