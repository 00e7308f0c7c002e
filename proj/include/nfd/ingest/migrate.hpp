#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nfd/common/fs.hpp"
#include "nfd/index/shard.hpp"
#include "nfd/ingest/lexicon.hpp"
#include "nfd/model/types.hpp"

namespace nfd {

enum class DateSource { Filename, Mtime, FilenameThenMtime };

/// Assigns a log date to a historical document, from a YYYY-MM-DD or
/// YYYYMMDD run in its file name and/or from its modification time (UTC).
struct DateMapper {
  DateSource source = DateSource::FilenameThenMtime;
  std::optional<Date> map(const fs::path& file) const;
};

std::optional<DateSource> parse_date_source(std::string_view name);

struct MigrationReport {
  int entries_added = 0;
  int files_processed = 0;
  std::vector<std::string> warnings;
};

/// Imports every .md/.markdown/.txt file under `source_dir` (recursively,
/// in path order), one entry per blank-line paragraph. Paragraphs whose body
/// hash is already indexed are skipped, so a re-run adds nothing.
/// Throws SourceMissing; per-file problems become warnings.
MigrationReport migrate_corpus(KnowledgeState& state, IndexShard& shard, const fs::path& source_dir,
                               const DateMapper& mapper, const CueLexicon& lexicon);

}  // namespace nfd
