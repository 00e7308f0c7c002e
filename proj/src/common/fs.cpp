#include "nfd/common/fs.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

#include <fmt/format.h>

#include "nfd/common/error.hpp"

namespace nfd {

std::optional<std::string> try_read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(ss).str();
}

std::string read_file(const fs::path& path) {
  auto content = try_read_file(path);
  if (!content) throw Error(ErrorCode::IoFailure, fmt::format("cannot read {}", path.string()));
  return std::move(*content);
}

void StagedWrite::put(const fs::path& path, std::string content) {
  for (auto& p : pending_) {
    if (p.path == path) {
      p.content = std::move(content);
      return;
    }
  }
  if (auto existing = try_read_file(path); existing && *existing == content) return;
  pending_.push_back({path, std::move(content)});
}

std::vector<fs::path> StagedWrite::paths() const {
  std::vector<fs::path> out;
  for (const auto& p : pending_) out.push_back(p.path);
  return out;
}

void StagedWrite::commit() {
  std::vector<fs::path> temps;
  auto cleanup = [&temps] {
    std::error_code ec;
    for (const auto& t : temps) fs::remove(t, ec);
  };
  for (const auto& p : pending_) {
    std::error_code ec;
    fs::create_directories(p.path.parent_path(), ec);
    fs::path tmp = p.path;
    tmp += fmt::format(".nfd-tmp-{}", ::getpid());
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      cleanup();
      throw Error(ErrorCode::IoFailure, fmt::format("cannot write {}", tmp.string()));
    }
    temps.push_back(tmp);
    out.write(p.content.data(), static_cast<std::streamsize>(p.content.size()));
    out.close();
    if (!out) {
      cleanup();
      throw Error(ErrorCode::IoFailure, fmt::format("short write to {}", tmp.string()));
    }
  }
  for (std::size_t i = 0; i < pending_.size(); ++i) {
    std::error_code ec;
    fs::rename(temps[i], pending_[i].path, ec);
    if (ec) {
      cleanup();
      throw Error(ErrorCode::IoFailure,
                  fmt::format("cannot rename into {}: {}", pending_[i].path.string(), ec.message()));
    }
  }
  pending_.clear();
}

std::string generic_relative(const fs::path& path, const fs::path& base) {
  return path.lexically_relative(base).generic_string();
}

}  // namespace nfd
