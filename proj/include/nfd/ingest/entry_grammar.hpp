#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nfd/ingest/lexicon.hpp"
#include "nfd/model/types.hpp"

namespace nfd {

// Daily-log line grammar:
//
//   - [HH:MM ][TAG][TAG]... body text
//     continuation line (two-space indent, appended to the body)
//     <!-- ctx key=value key=value -->
//
// TAG matches [A-Z][A-Z0-9-]*. Blank lines end an entry. Any other line is
// prose and is reported as a warning.

struct ParseWarning {
  int line = 0;
  std::string message;
};

struct DailyLogParse {
  std::vector<ExperientialEntry> entries;
  std::vector<ParseWarning> warnings;
};

/// Total: never throws. Entries are numbered #0001... in file order.
DailyLogParse parse_daily_log(std::string_view text, Date date, const CueLexicon& lexicon = CueLexicon::defaults());

bool is_valid_tag(std::string_view tag);

struct LeadingTags {
  std::vector<std::string> tags;
  std::string_view rest;
};

/// Consumes a contiguous run of `[TAG]` tokens at the start of `text`.
LeadingTags split_leading_tags(std::string_view text);

/// First recognized category tag, else the lexicon's guess, else
/// OperationalRecord.
Category categorize(const std::vector<std::string>& tags, std::string_view body, const CueLexicon& lexicon);

/// Serialized lines for one entry, ending in a newline.
std::string format_entry(const ExperientialEntry& entry);

/// Trims the body and drops carriage returns, the form in which bodies are
/// stored.
std::string normalize_body(std::string_view body);

}  // namespace nfd
