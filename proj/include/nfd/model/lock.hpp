#pragma once

#include <filesystem>

namespace nfd {

enum class LockMode { Shared, Exclusive };

/// Advisory flock(2) on `<root>/.nfd.lock`. Writers hold it exclusively,
/// readers shared; acquisition never blocks and fails with LockHeld.
class WorkspaceLock {
 public:
  WorkspaceLock() = default;
  static WorkspaceLock acquire(const std::filesystem::path& root, LockMode mode);

  WorkspaceLock(WorkspaceLock&& other) noexcept;
  WorkspaceLock& operator=(WorkspaceLock&& other) noexcept;
  WorkspaceLock(const WorkspaceLock&) = delete;
  WorkspaceLock& operator=(const WorkspaceLock&) = delete;
  ~WorkspaceLock();

  bool held() const { return fd_ >= 0; }
  LockMode mode() const { return mode_; }
  void release();

 private:
  int fd_ = -1;
  LockMode mode_ = LockMode::Shared;
};

inline constexpr const char* kLockFileName = ".nfd.lock";

}  // namespace nfd
