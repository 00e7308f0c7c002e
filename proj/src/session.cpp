#include "nfd/session.hpp"

#include "nfd/common/error.hpp"
#include "nfd/model/config.hpp"

namespace nfd {

Workspace Workspace::open(const fs::path& root, LockMode mode) {
  if (!fs::is_regular_file(root / kConfigFile)) {
    throw Error(ErrorCode::NotAWorkspace, root.string() + " has no " + kConfigFile);
  }
  Workspace ws;
  ws.root_ = root;
  ws.lock_ = WorkspaceLock::acquire(root, mode);
  auto loaded = load_state(root);
  ws.state = std::move(loaded.state);
  ws.warnings = std::move(loaded.warnings);
  ws.lexicon = load_lexicon(root);
  ws.crystal = load_crystal(root);
  ws.loaded_crystal_ = ws.crystal;
  ws.index = load_index(root, ws.state.experiential);
  return ws;
}

std::vector<WriteRecord> Workspace::commit() {
  if (lock_.mode() != LockMode::Exclusive) {
    throw Error(ErrorCode::LockHeld, "workspace was opened read-only");
  }
  StagedWrite staged;
  StoreGateAuthority authority(crystal, &loaded_crystal_);
  auto records = stage_state(state, root_, authority, staged);
  stage_crystal(crystal, root_, staged);
  staged.put(root_ / kIndexFile, dump_canonical(shard_to_json(index)));
  for (const auto& p : staged.paths()) {
    std::string rel = generic_relative(p, root_);
    bool listed = false;
    for (const auto& r : records) listed = listed || r.path == rel;
    if (!listed) records.push_back({rel, std::nullopt});
  }
  staged.commit();
  loaded_crystal_ = crystal;
  return records;
}

}  // namespace nfd
