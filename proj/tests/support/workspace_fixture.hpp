#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace nfd::testing {

namespace fs = std::filesystem;

/// Directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "nfd-test");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

fs::path fixture_dir();
fs::path source_dir();

/// Copies tests/fixtures/<name> to `dest` (which must not exist yet).
fs::path copy_fixture(const std::string& name, const fs::path& dest);

nlohmann::json fixture_expected(const std::string& name);

/// Relative path -> bytes for every regular file under `root`, skipping the
/// lock file.
using Tree = std::map<std::string, std::string>;
Tree snapshot(const fs::path& root);

struct TreeDiff {
  std::vector<std::string> added;
  std::vector<std::string> removed;
  std::vector<std::string> changed;
  bool empty() const { return added.empty() && removed.empty() && changed.empty(); }
};
TreeDiff diff(const Tree& before, const Tree& after);

std::string slurp(const fs::path& path);
void spit(const fs::path& path, const std::string& content);

}  // namespace nfd::testing
