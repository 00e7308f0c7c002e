#pragma once

// Reference computations used to check the engine. They work from raw text
// and raw files and share no code with the library.

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nfd::testing {

struct OracleDoc {
  std::string id;
  /// Days since the epoch.
  int day = 0;
  std::vector<std::string> tags;
  std::string body;
};

std::vector<std::string> oracle_tokens(std::string_view text);
double oracle_cosine(std::string_view a, std::string_view b);

/// Okapi BM25 (k1 = 1.2, b = 0.75, idf = ln(1 + (N - n + 0.5) / (n + 0.5)))
/// of docs[index] for the distinct terms of `query`.
double naive_bm25(const std::vector<OracleDoc>& docs, std::size_t index, std::string_view query);

struct OracleCandidate {
  std::vector<std::string> signature;
  std::vector<std::string> support;
  double score = 0;
  bool weak = false;
};

/// Every maximal connected subset of at least `min_support` entries in each
/// tag-signature group, found by enumerating all subsets. Groups with no such
/// subset, at least `min_support` members and a mean pairwise similarity
/// under the threshold yield one weak candidate.
std::vector<OracleCandidate> exhaustive_candidates(const std::vector<OracleDoc>& docs, double threshold,
                                                   int min_support);

struct ScannedEntry {
  std::string date;
  std::vector<std::string> tags;
};
std::vector<ScannedEntry> scan_logs(const std::filesystem::path& root);

struct ScannedSection {
  std::string file;
  std::string kind;
  bool validated = false;
  bool examples = false;
  bool conditions = false;
  bool populated = false;
  int provenance = 0;
  double q = 0;
};
std::vector<ScannedSection> scan_sections(const std::filesystem::path& root, int min_support);
double scan_structure_raw(const std::filesystem::path& root, int min_support);

/// Entry ids listed in memory/consolidation.json.
std::multiset<std::string> scan_consolidated(const std::filesystem::path& root);

struct ScannedReport {
  int daily_log_entries = 0;
  int case_recalls = 0;
  int bias_flags = 0;
  int skill_refs_populated = 0;
  int error_patterns = 0;
};
ScannedReport scan_report(const std::filesystem::path& root, const std::string& from, const std::string& to,
                          int min_support);

}  // namespace nfd::testing
