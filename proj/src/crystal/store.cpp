#include "nfd/crystal/store.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <json.hpp>

#include "nfd/common/error.hpp"
#include "nfd/model/config.hpp"

namespace nfd {

using nlohmann::json;

namespace {

template <typename T, typename Parse>
void load_dir(const fs::path& root, const char* sub, std::map<std::string, T>& out, Parse parse) {
  fs::path dir = root / "crystal" / sub;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::string rel = fmt::format("crystal/{}/{}", sub, f.filename().string());
    std::string content = read_file(f);
    try {
      T value = parse(json::parse(content));
      out[f.stem().string()] = std::move(value);
    } catch (const json::exception& e) {
      throw parse_error(rel, 1, e.what());
    } catch (const Error& e) {
      throw parse_error(rel, 1, e.what());
    }
  }
}

}  // namespace

const ReviewBatch* CrystalStore::find(std::string_view batch_id) const {
  auto it = batches.find(std::string(batch_id));
  return it == batches.end() ? nullptr : &it->second;
}

ReviewBatch* CrystalStore::find(std::string_view batch_id) {
  auto it = batches.find(std::string(batch_id));
  return it == batches.end() ? nullptr : &it->second;
}

std::vector<HistoryRecord> CrystalStore::history_in_order() const {
  std::vector<HistoryRecord> out;
  for (const auto& [id, h] : history) out.push_back(h);
  std::sort(out.begin(), out.end(), [](const HistoryRecord& a, const HistoryRecord& b) {
    if (a.integrated_at != b.integrated_at) return a.integrated_at < b.integrated_at;
    return a.batch_id < b.batch_id;
  });
  return out;
}

CrystalStore load_crystal(const fs::path& root) {
  CrystalStore store;
  load_dir(root, "pending", store.batches, batch_from_json);
  load_dir(root, "decisions", store.decisions, decisions_from_json);
  load_dir(root, "history", store.history, history_from_json);
  return store;
}

void stage_crystal(const CrystalStore& store, const fs::path& root, StagedWrite& staged) {
  for (const auto& [id, b] : store.batches) {
    staged.put(root / "crystal" / "pending" / (id + ".json"), dump_canonical(batch_to_json(b)));
  }
  for (const auto& [id, d] : store.decisions) {
    staged.put(root / "crystal" / "decisions" / (id + ".json"), dump_canonical(decisions_to_json(d)));
  }
  for (const auto& [id, h] : store.history) {
    staged.put(root / "crystal" / "history" / (id + ".json"), dump_canonical(history_to_json(h)));
  }
}

bool StoreGateAuthority::authorizes(std::string_view batch_id, std::string_view unit) const {
  const ReviewBatch* batch = store_.find(batch_id);
  if (!batch || batch->status == BatchStatus::Pending) return false;
  if (baseline_) {
    const ReviewBatch* before = baseline_->find(batch_id);
    if (before && before->status == BatchStatus::Integrated) return false;
  }
  auto it = store_.decisions.find(std::string(batch_id));
  if (it == store_.decisions.end()) return false;
  bool reviewed = std::any_of(it->second.decisions.begin(), it->second.decisions.end(),
                              [](const ReviewDecision& d) { return d.verdict != Verdict::Reject; });
  if (!reviewed) return false;
  constexpr std::string_view kSkillPrefix = "skills/";
  return std::any_of(batch->drafts.begin(), batch->drafts.end(), [&](const DraftAsset& d) {
    if (unit == "MEMORY.md") return d.principle_text.has_value();
    return unit.substr(0, kSkillPrefix.size()) == kSkillPrefix && unit.substr(kSkillPrefix.size()) == d.target_skill;
  });
}

}  // namespace nfd
