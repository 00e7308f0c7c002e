#include "nfd/ingest/migrate.hpp"

#include <algorithm>
#include <chrono>
#include <regex>
#include <set>

#include <fmt/format.h>

#include "nfd/common/error.hpp"
#include "nfd/common/text.hpp"
#include "nfd/ingest/append.hpp"
#include "nfd/ingest/entry_grammar.hpp"

namespace nfd {

namespace {

std::optional<Date> date_from_name(const std::string& name) {
  static const std::regex dashed(R"((\d{4})-(\d{2})-(\d{2}))");
  static const std::regex compact(R"((\d{4})(\d{2})(\d{2}))");
  std::smatch m;
  for (const auto* re : {&dashed, &compact}) {
    if (std::regex_search(name, m, *re)) {
      if (auto d = Date::parse(m[1].str() + "-" + m[2].str() + "-" + m[3].str())) return d;
    }
  }
  return std::nullopt;
}

std::optional<Date> date_from_mtime(const fs::path& file) {
  std::error_code ec;
  auto ftime = fs::last_write_time(file, ec);
  if (ec) return std::nullopt;
  auto sys = std::chrono::file_clock::to_sys(ftime);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(sys.time_since_epoch()).count();
  return Timestamp::from_seconds(secs).date();
}

std::vector<std::string> paragraphs(std::string_view content) {
  std::vector<std::string> out;
  std::string cur;
  for (std::string_view line : text::lines(content)) {
    if (text::trim(line).empty()) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    if (!cur.empty()) cur += '\n';
    cur += line;
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool is_source_file(const fs::path& p) {
  auto ext = text::to_lower(p.extension().string());
  return ext == ".md" || ext == ".markdown" || ext == ".txt";
}

}  // namespace

std::optional<Date> DateMapper::map(const fs::path& file) const {
  switch (source) {
    case DateSource::Filename:
      return date_from_name(file.filename().string());
    case DateSource::Mtime:
      return date_from_mtime(file);
    case DateSource::FilenameThenMtime:
      if (auto d = date_from_name(file.filename().string())) return d;
      return date_from_mtime(file);
  }
  return std::nullopt;
}

std::optional<DateSource> parse_date_source(std::string_view name) {
  if (name == "filename") return DateSource::Filename;
  if (name == "mtime") return DateSource::Mtime;
  if (name == "filename-then-mtime" || name == "auto") return DateSource::FilenameThenMtime;
  return std::nullopt;
}

MigrationReport migrate_corpus(KnowledgeState& state, IndexShard& shard, const fs::path& source_dir,
                               const DateMapper& mapper, const CueLexicon& lexicon) {
  std::error_code ec;
  if (!fs::is_directory(source_dir, ec)) {
    throw Error(ErrorCode::SourceMissing, fmt::format("{} is not a directory", source_dir.string()));
  }
  std::vector<fs::path> files;
  for (auto it = fs::recursive_directory_iterator(source_dir, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (it->is_regular_file() && is_source_file(it->path())) files.push_back(it->path());
  }
  if (ec) throw Error(ErrorCode::SourceMissing, fmt::format("cannot list {}: {}", source_dir.string(), ec.message()));
  std::sort(files.begin(), files.end());

  std::set<std::uint64_t> seen;
  for (const auto& [id, h] : shard.content_hashes) seen.insert(h);

  MigrationReport report;
  for (const auto& file : files) {
    std::string rel = generic_relative(file, source_dir);
    auto date = mapper.map(file);
    if (!date) {
      report.warnings.push_back(rel + ": no date could be derived; skipped");
      continue;
    }
    auto content = try_read_file(file);
    if (!content) {
      report.warnings.push_back(rel + ": unreadable; skipped");
      continue;
    }
    for (const auto& para : paragraphs(text::canonical(*content))) {
      LeadingTags lead = split_leading_tags(text::trim(para));
      NewEntry req;
      req.date = *date;
      req.tags = lead.tags;
      req.body = normalize_body(lead.tags.empty() ? std::string_view(para) : lead.rest);
      req.context["source"] = rel;
      if (req.body.empty()) continue;
      std::uint64_t h = body_hash(req.body);
      if (seen.count(h)) continue;
      try {
        append_entry(state, req, lexicon, &shard);
        seen.insert(h);
        ++report.entries_added;
      } catch (const Error& e) {
        report.warnings.push_back(fmt::format("{}: paragraph skipped: {}", rel, e.what()));
      }
    }
    ++report.files_processed;
  }
  return report;
}

}  // namespace nfd
