#include "nfd/model/lock.hpp"

#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fmt/format.h>

#include "nfd/common/error.hpp"

namespace nfd {

WorkspaceLock WorkspaceLock::acquire(const std::filesystem::path& root, LockMode mode) {
  auto path = root / kLockFileName;
  int fd = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0 && mode == LockMode::Shared) fd = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd < 0) {
    // A read-only workspace without a lock file can still be read.
    if (mode == LockMode::Shared) return WorkspaceLock();
    throw Error(ErrorCode::IoFailure, fmt::format("cannot open lock file {}: {}", path.string(), std::strerror(errno)));
  }
  int op = (mode == LockMode::Exclusive ? LOCK_EX : LOCK_SH) | LOCK_NB;
  if (::flock(fd, op) != 0) {
    int err = errno;
    ::close(fd);
    if (err == EWOULDBLOCK) {
      throw Error(ErrorCode::LockHeld, fmt::format("workspace {} is locked by another writer", root.string()));
    }
    throw Error(ErrorCode::IoFailure, fmt::format("flock failed: {}", std::strerror(err)));
  }
  WorkspaceLock lock;
  lock.fd_ = fd;
  lock.mode_ = mode;
  return lock;
}

WorkspaceLock::WorkspaceLock(WorkspaceLock&& other) noexcept : fd_(other.fd_), mode_(other.mode_) {
  other.fd_ = -1;
}

WorkspaceLock& WorkspaceLock::operator=(WorkspaceLock&& other) noexcept {
  if (this != &other) {
    release();
    fd_ = other.fd_;
    mode_ = other.mode_;
    other.fd_ = -1;
  }
  return *this;
}

WorkspaceLock::~WorkspaceLock() { release(); }

void WorkspaceLock::release() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
    fd_ = -1;
  }
}

}  // namespace nfd
