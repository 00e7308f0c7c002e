#include "nfd/model/workspace.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "nfd/common/error.hpp"
#include "nfd/common/hash.hpp"
#include "nfd/common/text.hpp"
#include "nfd/crystal/store.hpp"
#include "nfd/ingest/entry_grammar.hpp"
#include "nfd/model/config.hpp"
#include "nfd/model/lock.hpp"
#include "nfd/model/principles.hpp"
#include "nfd/model/skill.hpp"

namespace nfd {

using nlohmann::json;

namespace {

constexpr std::string_view kDefaultPersona = "A careful domain research partner, still being nurtured.";

std::string skeleton_soul(std::string_view persona) {
  return fmt::format(
      "# SOUL\n\n"
      "## Persona\n\n"
      "{}\n\n"
      "## Voice\n\n"
      "- State uncertainty explicitly.\n"
      "- Separate evidence from interpretation.\n",
      persona);
}

constexpr std::string_view kSkeletonAgents =
    "# AGENTS\n\n"
    "## Operating rules\n\n"
    "- Log decisions, reasoning, errors and insights to memory/YYYY-MM-DD.md with bracket tags.\n"
    "- Consult skills/ references before answering in a covered area.\n"
    "- Never edit skills/ or constitutional files outside a reviewed crystallization batch.\n";

constexpr std::string_view kSkeletonUser =
    "# USER\n\n"
    "## Profile\n\n"
    "_To be learned through conversation._\n";

std::string skeleton_memory() {
  return fmt::format(
      "# MEMORY\n\n"
      "## Summary\n\n"
      "_Nothing crystallized yet._\n\n"
      "## Principles\n\n"
      "{}\n"
      "{}\n",
      kPrinciplesBegin, kPrinciplesEnd);
}

bool is_hidden(const fs::path& p) {
  auto name = p.filename().string();
  return !name.empty() && name[0] == '.';
}

int line_of_byte(std::string_view content, std::size_t byte) {
  byte = std::min(byte, content.size());
  return 1 + static_cast<int>(std::count(content.begin(), content.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json parse_json_file(const fs::path& path, std::string_view rel) {
  std::string content = read_file(path);
  try {
    return json::parse(content);
  } catch (const json::parse_error& e) {
    throw parse_error(rel, line_of_byte(content, e.byte), "malformed JSON");
  }
}

std::vector<VersionRecord> versions_from_json(const json& j, std::string_view rel) {
  std::vector<VersionRecord> out;
  try {
    for (const auto& v : j.at("versions")) {
      VersionRecord r;
      r.version = v.at("version").get<int>();
      r.batch_id = v.at("batch_id").get<std::string>();
      auto ts = Timestamp::parse(v.at("timestamp").get<std::string>());
      if (!ts) throw parse_error(rel, 1, "bad version timestamp");
      r.timestamp = *ts;
      r.change_summary = v.at("change_summary").get<std::string>();
      r.content_hash = v.at("content_hash").get<std::string>();
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw parse_error(rel, 1, e.what());
  }
  return out;
}

json versions_to_json(const std::vector<VersionRecord>& versions) {
  json arr = json::array();
  for (const auto& v : versions) {
    arr.push_back({{"version", v.version},
                   {"batch_id", v.batch_id},
                   {"timestamp", v.timestamp.str()},
                   {"change_summary", v.change_summary},
                   {"content_hash", v.content_hash}});
  }
  return json{{"versions", arr}};
}

json consolidation_to_json(const std::vector<ConsolidationRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) {
    json ids = json::array();
    for (const auto& id : r.entry_ids) ids.push_back(id.str());
    arr.push_back({{"batch_id", r.batch_id},
                   {"entry_ids", ids},
                   {"asset_name", r.asset_name},
                   {"asset_version", r.asset_version}});
  }
  return json{{"records", arr}};
}

std::vector<ConsolidationRecord> consolidation_from_json(const json& j, std::string_view rel) {
  std::vector<ConsolidationRecord> out;
  try {
    for (const auto& r : j.at("records")) {
      ConsolidationRecord rec;
      rec.batch_id = r.at("batch_id").get<std::string>();
      rec.asset_name = r.at("asset_name").get<std::string>();
      rec.asset_version = r.at("asset_version").get<int>();
      for (const auto& id : r.at("entry_ids")) {
        auto parsed = EntryId::parse(id.get<std::string>());
        if (!parsed) throw parse_error(rel, 1, "bad entry id in consolidation record");
        rec.entry_ids.push_back(*parsed);
      }
      out.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw parse_error(rel, 1, e.what());
  }
  return out;
}

std::map<std::string, std::string> read_tree(const fs::path& dir, bool canonicalize) {
  std::map<std::string, std::string> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (auto it = fs::recursive_directory_iterator(dir); it != fs::recursive_directory_iterator(); ++it) {
    if (!it->is_regular_file() || is_hidden(it->path())) continue;
    std::string rel = generic_relative(it->path(), dir);
    std::string content = read_file(it->path());
    out[rel] = canonicalize ? text::canonical(content) : std::move(content);
  }
  return out;
}

std::optional<SkillAsset> read_skill_dir(const fs::path& dir, const std::string& name,
                                         std::vector<LoadWarning>* warnings) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return std::nullopt;
  SkillAsset skill;
  skill.name = name;
  if (auto instructions = try_read_file(dir / "SKILL.md")) {
    skill.instructions = text::canonical(*instructions);
  } else if (warnings) {
    warnings->push_back({"skills/" + name + "/SKILL.md", 0, "missing SKILL.md"});
  }
  for (auto& [file, content] : read_tree(dir / "references", true)) {
    if (file.find('/') != std::string::npos) {
      if (warnings) warnings->push_back({"skills/" + name + "/references/" + file, 0, "nested reference ignored"});
      continue;
    }
    skill.references[file] = std::move(content);
  }
  skill.scripts = read_tree(dir / "scripts", false);
  if (fs::exists(dir / "versions.json")) {
    std::string rel = "skills/" + name + "/versions.json";
    skill.versions = versions_from_json(parse_json_file(dir / "versions.json", rel), rel);
  }
  return skill;
}

/// Document as it would be persisted if it were loaded from `raw`.
std::string normalize_document(std::string_view name, std::string_view raw) {
  std::string canon = text::canonical(raw);
  if (name == "MEMORY.md") return splice_principles(canon, parse_principles(canon).principles);
  return canon;
}

class GateCheck {
 public:
  GateCheck(const KnowledgeState& state, const GateAuthority& authority) : state_(state), authority_(authority) {}

  /// Returns the authorizing batch or throws.
  std::string require(const std::string& unit, std::uint64_t content_hash) const {
    for (auto it = state_.write_grants.rbegin(); it != state_.write_grants.rend(); ++it) {
      if (it->unit == unit && it->content_hash == content_hash && authority_.authorizes(it->batch_id, unit)) {
        return it->batch_id;
      }
    }
    throw Error(ErrorCode::InvariantViolation,
                fmt::format("human gate: change to {} is not backed by a reviewed crystallization batch", unit));
  }

 private:
  const KnowledgeState& state_;
  const GateAuthority& authority_;
};

}  // namespace

KnowledgeState scaffold_workspace(const fs::path& root, const std::optional<std::string>& persona_seed) {
  std::error_code ec;
  if (fs::exists(root, ec)) {
    if (!fs::is_directory(root, ec)) {
      throw Error(ErrorCode::TargetNotEmpty, fmt::format("{} exists and is not a directory", root.string()));
    }
    for (const auto& entry : fs::directory_iterator(root)) {
      if (!is_hidden(entry.path())) {
        throw Error(ErrorCode::TargetNotEmpty, fmt::format("{} is not empty", root.string()));
      }
    }
  }
  fs::create_directories(root, ec);
  if (ec) throw Error(ErrorCode::IoFailure, fmt::format("cannot create {}: {}", root.string(), ec.message()));
  auto lock = WorkspaceLock::acquire(root, LockMode::Exclusive);

  for (const char* dir : {"skills", "memory", "crystal/pending", "crystal/decisions", "crystal/history"}) {
    fs::create_directories(root / dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, fmt::format("cannot create {}: {}", dir, ec.message()));
  }
  StagedWrite staged;
  std::string persona = persona_seed && !text::trim(*persona_seed).empty() ? std::string(text::trim(*persona_seed))
                                                                           : std::string(kDefaultPersona);
  staged.put(root / "SOUL.md", skeleton_soul(persona));
  staged.put(root / "AGENTS.md", std::string(kSkeletonAgents));
  staged.put(root / "USER.md", std::string(kSkeletonUser));
  staged.put(root / "MEMORY.md", skeleton_memory());
  staged.put(root / kConfigFile, dump_canonical(workspace_config_to_json(EngineConfig{}, LifecyclePhase::Bootstrap)));
  staged.commit();
  return load_state(root).state;
}

CueLexicon load_lexicon(const fs::path& root) {
  if (!fs::exists(root / kLexiconFile)) return CueLexicon::defaults();
  return CueLexicon::with_overrides(parse_json_file(root / kLexiconFile, kLexiconFile));
}

LoadResult load_state(const fs::path& root) {
  if (!fs::is_regular_file(root / kConfigFile)) {
    throw Error(ErrorCode::NotAWorkspace, fmt::format("{} has no {}", root.string(), kConfigFile));
  }
  LoadResult result;
  KnowledgeState& state = result.state;
  auto& warnings = result.warnings;

  std::vector<std::string> config_warnings;
  workspace_config_from_json(parse_json_file(root / kConfigFile, kConfigFile), state.config, state.lifecycle_phase,
                             config_warnings);
  for (auto& w : config_warnings) warnings.push_back({kConfigFile, 0, std::move(w)});
  CueLexicon lexicon = load_lexicon(root);

  for (auto name : kConstitutionalDocs) {
    std::string key(name);
    auto content = try_read_file(root / key);
    if (!content) warnings.push_back({key, 0, "missing constitutional document"});
    state.constitutional.documents[key] = content ? text::canonical(*content) : std::string();
  }
  auto block = parse_principles(state.constitutional.documents["MEMORY.md"]);
  state.constitutional.principles = std::move(block.principles);
  for (auto& [line, msg] : block.warnings) warnings.push_back({"MEMORY.md", line, std::move(msg)});

  std::error_code ec;
  if (fs::is_directory(root / "skills", ec)) {
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(root / "skills")) {
      if (entry.is_directory() && !is_hidden(entry.path())) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
    for (const auto& dir : dirs) {
      std::string name = dir.filename().string();
      if (!text::is_kebab_case(name)) {
        warnings.push_back({"skills/" + name, 0, "skill folder name is not kebab-case; ignored"});
        continue;
      }
      if (auto skill = read_skill_dir(dir, name, &warnings)) state.skills.push_back(std::move(*skill));
    }
  }

  static const std::regex daily_log(R"((\d{4}-\d{2}-\d{2})\.md)");
  if (fs::is_directory(root / "memory", ec)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(root / "memory")) {
      if (entry.is_regular_file() && entry.path().extension() == ".md") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
      std::string fname = path.filename().string();
      std::string rel = "memory/" + fname;
      std::smatch m;
      std::optional<Date> date;
      if (std::regex_match(fname, m, daily_log)) date = Date::parse(m[1].str());
      if (!date) {
        warnings.push_back({rel, 0, "not a dated daily log; ignored"});
        continue;
      }
      std::string raw = read_file(path);
      auto parsed = parse_daily_log(raw, *date, lexicon);
      for (auto& w : parsed.warnings) warnings.push_back({rel, w.line, std::move(w.message)});
      for (auto& e : parsed.entries) state.experiential.entries.push_back(std::move(e));
      state.experiential.logs[*date] = std::move(raw);
    }
  }
  if (fs::exists(root / kConsolidationFile)) {
    state.experiential.archived_groups =
        consolidation_from_json(parse_json_file(root / kConsolidationFile, kConsolidationFile), kConsolidationFile);
  }
  auto& entries = state.experiential.entries;
  for (const auto& rec : state.experiential.archived_groups) {
    for (const auto& id : rec.entry_ids) {
      auto it = std::lower_bound(entries.begin(), entries.end(), id,
                                 [](const ExperientialEntry& e, const EntryId& k) { return e.id < k; });
      if (it == entries.end() || it->id != id) {
        warnings.push_back({kConsolidationFile, 0, "consolidated entry " + id.str() + " not found"});
        continue;
      }
      it->consolidated_into = AssetRef{rec.asset_name, rec.asset_version};
    }
  }
  return result;
}

std::string canonical_document(const KnowledgeState& state, std::string_view name) {
  auto it = state.constitutional.documents.find(std::string(name));
  std::string content = it == state.constitutional.documents.end() ? std::string() : text::canonical(it->second);
  if (name == "MEMORY.md") return splice_principles(content, state.constitutional.principles);
  return content;
}

std::vector<WriteRecord> stage_state(const KnowledgeState& state, const fs::path& root,
                                     const GateAuthority& authority, StagedWrite& staged) {
  validate_state(state);
  GateCheck gate(state, authority);
  std::map<fs::path, std::optional<std::string>> attribution;

  auto put = [&](const fs::path& rel, std::string content, std::optional<std::string> batch = std::nullopt) {
    fs::path full = root / rel;
    if (auto existing = try_read_file(full); existing && *existing == content) return;
    attribution[full] = std::move(batch);
    staged.put(full, std::move(content));
  };

  put(kConfigFile, dump_canonical(workspace_config_to_json(state.config, state.lifecycle_phase)));

  for (auto name : kConstitutionalDocs) {
    std::string key(name);
    std::string content = canonical_document(state, key);
    auto disk = try_read_file(root / key);
    if (!disk && content.empty()) continue;
    std::optional<std::string> batch;
    if (!disk || normalize_document(key, *disk) != content) batch = gate.require(key, fnv1a64(content));
    put(key, std::move(content), std::move(batch));
  }

  for (const auto& skill : state.skills) {
    fs::path dir = fs::path("skills") / skill.name;
    auto on_disk = read_skill_dir(root / dir, skill.name, nullptr);
    std::optional<std::string> batch;
    bool changed = !on_disk || skill_content_hash(*on_disk) != skill_content_hash(skill) ||
                   on_disk->versions != skill.versions;
    if (changed) batch = gate.require("skills/" + skill.name, skill_content_hash(skill));
    put(dir / "SKILL.md", text::canonical(skill.instructions), batch);
    for (const auto& [file, content] : skill.references) put(dir / "references" / file, text::canonical(content), batch);
    for (const auto& [file, content] : skill.scripts) put(dir / "scripts" / file, content, batch);
    if (!skill.versions.empty()) put(dir / "versions.json", dump_canonical(versions_to_json(skill.versions)), batch);
  }

  for (const auto& [date, content] : state.experiential.logs) {
    fs::path rel = fs::path("memory") / (date.str() + ".md");
    if (auto disk = try_read_file(root / rel); disk && content.compare(0, disk->size(), *disk) != 0) {
      throw Error(ErrorCode::InvariantViolation,
                  fmt::format("append-only: {} would rewrite previously written bytes", rel.generic_string()));
    }
    put(rel, content);
  }

  if (!state.experiential.archived_groups.empty() || fs::exists(root / kConsolidationFile)) {
    put(kConsolidationFile, dump_canonical(consolidation_to_json(state.experiential.archived_groups)));
  }

  std::vector<WriteRecord> records;
  for (const auto& [path, batch] : attribution) records.push_back({generic_relative(path, root), batch});
  return records;
}

std::vector<WriteRecord> persist_state(const KnowledgeState& state, const fs::path& root) {
  CrystalStore store = load_crystal(root);
  StoreGateAuthority authority(store);
  StagedWrite staged;
  auto records = stage_state(state, root, authority, staged);
  staged.commit();
  return records;
}

RenderedConstitution render_constitutional(const KnowledgeState& state) {
  RenderedConstitution r;
  for (auto name : kConstitutionalDocs) {
    r.text += fmt::format("=== {} ===\n", name);
    r.text += canonical_document(state, name);
    r.text += "\n";
  }
  r.token_count = text::count_whitespace_tokens(r.text);
  r.over_budget = r.token_count > static_cast<std::size_t>(state.config.constitutional_budget_tokens);
  return r;
}

std::vector<std::string> check_invariants(const KnowledgeState& state) {
  std::vector<std::string> violations;
  auto fail = [&](std::string what) { violations.push_back(std::move(what)); };

  try {
    validate_config(state.config);
  } catch (const Error& e) {
    fail(std::string("config: ") + e.what());
  }
  for (auto name : kConstitutionalDocs) {
    if (!state.constitutional.documents.count(std::string(name))) {
      fail(fmt::format("constitutional slot {} exists", name));
    }
  }
  std::set<std::string> principle_ids;
  for (const auto& p : state.constitutional.principles) {
    if (!principle_ids.insert(p.id).second) fail("principle ids unique: " + p.id);
    if (p.status == PrincipleStatus::Confirmed && p.source_entries.empty() && !p.user_origin) {
      fail("confirmed principle has a source entry or user origin: " + p.id);
    }
  }

  const auto& entries = state.experiential.entries;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (i > 0 && !(entries[i - 1].id < e.id)) fail("entry ids unique and ordered: " + e.id.str());
    if (e.tags.empty()) fail("entry has tags: " + e.id.str());
    for (const auto& t : e.tags) {
      if (!is_valid_tag(t)) fail("entry tags valid: " + e.id.str());
    }
    if (text::trim(e.body).empty()) fail("entry body non-empty: " + e.id.str());
  }
  for (const auto& rec : state.experiential.archived_groups) {
    for (const auto& id : rec.entry_ids) {
      if (!state.experiential.find(id)) fail("consolidated entry exists: " + id.str());
    }
  }

  std::set<std::string> names;
  for (const auto& skill : state.skills) {
    if (!names.insert(skill.name).second) fail("skill names unique: " + skill.name);
    if (!text::is_kebab_case(skill.name)) fail("skill name kebab-case: " + skill.name);
    for (std::size_t i = 1; i < skill.versions.size(); ++i) {
      if (skill.versions[i].version <= skill.versions[i - 1].version) {
        fail("skill versions strictly increasing: " + skill.name);
      }
    }
    for (const auto& section : skill.sections()) {
      for (const auto& id : section.provenance) {
        if (!state.experiential.find(id)) {
          fail(fmt::format("provenance resolves: {} -> {}", skill.name, id.str()));
        }
      }
      if (section.flags.validated &&
          section.provenance.size() < static_cast<std::size_t>(state.config.min_support)) {
        fail(fmt::format("validated section has min_support provenance: {}/{}", skill.name, section.heading));
      }
    }
  }
  return violations;
}

void validate_state(const KnowledgeState& state) {
  auto violations = check_invariants(state);
  if (!violations.empty()) {
    throw Error(ErrorCode::InvariantViolation, "invariant violated: " + violations.front());
  }
}

}  // namespace nfd
