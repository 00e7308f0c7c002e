#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nfd {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path);
std::optional<std::string> try_read_file(const fs::path& path);

/// Collects file writes and applies them together: every payload is first
/// written to a sibling temp file, and only when all of them succeeded are
/// they renamed into place. A failed commit leaves no partial file behind.
///
/// Writes whose content equals what is already on disk are skipped.
class StagedWrite {
 public:
  void put(const fs::path& path, std::string content);
  bool empty() const { return pending_.empty(); }
  /// Paths that will change on commit, in insertion order.
  std::vector<fs::path> paths() const;
  void commit();

 private:
  struct Pending {
    fs::path path;
    std::string content;
  };
  std::vector<Pending> pending_;
};

/// Relative path with forward slashes, for reporting and JSON.
std::string generic_relative(const fs::path& path, const fs::path& base);

}  // namespace nfd
