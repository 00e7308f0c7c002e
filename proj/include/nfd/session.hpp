#pragma once

#include <vector>

#include "nfd/common/fs.hpp"
#include "nfd/crystal/store.hpp"
#include "nfd/index/shard.hpp"
#include "nfd/ingest/lexicon.hpp"
#include "nfd/model/lock.hpp"
#include "nfd/model/workspace.hpp"

namespace nfd {

/// An opened workspace: the lock, every layer loaded into memory and the
/// retrieval shard. Operations mutate the in-memory copy; commit() writes all
/// changed files in one staged write.
class Workspace {
 public:
  static Workspace open(const fs::path& root, LockMode mode);

  const fs::path& root() const { return root_; }
  LockMode mode() const { return lock_.mode(); }

  /// Throws LockHeld if opened shared; InvariantViolation on a gate or
  /// append-only breach, leaving the disk untouched.
  std::vector<WriteRecord> commit();

  KnowledgeState state;
  CueLexicon lexicon;
  IndexShard index;
  CrystalStore crystal;
  std::vector<LoadWarning> warnings;

 private:
  fs::path root_;
  WorkspaceLock lock_;
  CrystalStore loaded_crystal_;
};

}  // namespace nfd
