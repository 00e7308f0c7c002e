#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nfd/common/fs.hpp"
#include "nfd/crystal/review.hpp"
#include "nfd/model/workspace.hpp"

namespace nfd {

/// Everything under crystal/: batches (pending/), decision documents
/// (decisions/) and integration records (history/), keyed by batch id.
struct CrystalStore {
  std::map<std::string, ReviewBatch> batches;
  std::map<std::string, DecisionDocument> decisions;
  std::map<std::string, HistoryRecord> history;

  const ReviewBatch* find(std::string_view batch_id) const;
  ReviewBatch* find(std::string_view batch_id);
  /// History records ordered by integration time, then batch id.
  std::vector<HistoryRecord> history_in_order() const;
  bool operator==(const CrystalStore&) const = default;
};

/// Throws ParseError for unreadable JSON documents.
CrystalStore load_crystal(const fs::path& root);
void stage_crystal(const CrystalStore& store, const fs::path& root, StagedWrite& staged);

/// Authorizes a unit for a decided or integrated batch whose decision
/// document holds an approve or edit verdict and whose validated drafts
/// target that unit: `skills/<name>` for a draft aimed at that skill,
/// MEMORY.md for a draft carrying principle text. No batch authorizes the
/// other constitutional documents.
///
/// With `baseline` set (the store as it was loaded), batches already
/// integrated there are refused, so an old batch cannot back a new write.
class StoreGateAuthority : public GateAuthority {
 public:
  explicit StoreGateAuthority(const CrystalStore& store, const CrystalStore* baseline = nullptr)
      : store_(store), baseline_(baseline) {}
  bool authorizes(std::string_view batch_id, std::string_view unit) const override;

 private:
  const CrystalStore& store_;
  const CrystalStore* baseline_;
};

}  // namespace nfd
