#include "workspace_fixture.hpp"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace nfd::testing {

TempDir::TempDir(const std::string& prefix) {
  static std::atomic<int> counter{0};
  std::random_device rd;
  for (int attempt = 0; attempt < 16; ++attempt) {
    fs::path p = fs::temp_directory_path() /
                 (prefix + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" +
                  std::to_string(rd() % 100000));
    if (fs::create_directory(p)) {
      path_ = p;
      return;
    }
  }
  throw std::runtime_error("cannot create temp dir");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

fs::path fixture_dir() { return NFD_FIXTURE_DIR; }
fs::path source_dir() { return NFD_SOURCE_DIR; }

fs::path copy_fixture(const std::string& name, const fs::path& dest) {
  fs::copy(fixture_dir() / name, dest, fs::copy_options::recursive);
  return dest;
}

nlohmann::json fixture_expected(const std::string& name) {
  return nlohmann::json::parse(slurp(fixture_dir() / (name + ".expected.json")));
}

Tree snapshot(const fs::path& root) {
  Tree tree;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::string rel = fs::relative(e.path(), root).generic_string();
    if (rel == ".nfd.lock") continue;
    tree[rel] = slurp(e.path());
  }
  return tree;
}

TreeDiff diff(const Tree& before, const Tree& after) {
  TreeDiff d;
  for (const auto& [path, bytes] : before) {
    auto it = after.find(path);
    if (it == after.end()) d.removed.push_back(path);
    else if (it->second != bytes) d.changed.push_back(path);
  }
  for (const auto& [path, bytes] : after) {
    if (!before.count(path)) d.added.push_back(path);
  }
  return d;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

}  // namespace nfd::testing
