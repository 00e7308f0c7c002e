#include <gtest/gtest.h>

#include "nfd/common/error.hpp"
#include "nfd/ingest/append.hpp"
#include "nfd/model/lock.hpp"
#include "nfd/model/workspace.hpp"
#include "nfd/session.hpp"
#include "workspace_fixture.hpp"

namespace nfd {
namespace {

using testing::TempDir;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::IoFailure;
}

TEST(Scaffold, WritesPersonaIntoSoul) {
  TempDir tmp;
  fs::path root = tmp / "ws";
  auto state = scaffold_workspace(root, std::string("rigorous, evidence-based research partner"));
  std::string soul = testing::slurp(root / "SOUL.md");
  EXPECT_NE(soul.find("rigorous, evidence-based research partner"), std::string::npos);
  EXPECT_EQ(state.constitutional.documents.at("SOUL.md"), soul);
  for (const char* dir : {"skills", "memory", "crystal/pending", "crystal/decisions", "crystal/history"}) {
    EXPECT_TRUE(fs::is_directory(root / dir)) << dir;
  }
}

TEST(Scaffold, EmptyWorkspaceLoadsToSkeleton) {
  TempDir tmp;
  fs::path root = tmp / "ws";
  auto scaffolded = scaffold_workspace(root);
  auto loaded = load_state(root);
  EXPECT_EQ(loaded.state.constitutional.documents.size(), 4u);
  EXPECT_TRUE(loaded.state.skills.empty());
  EXPECT_TRUE(loaded.state.experiential.entries.empty());
  EXPECT_TRUE(loaded.warnings.empty());
  EXPECT_EQ(loaded.state, scaffolded);
  EXPECT_EQ(loaded.state.lifecycle_phase, LifecyclePhase::Bootstrap);
  EXPECT_TRUE(check_invariants(loaded.state).empty());
}

TEST(Scaffold, RefusesNonEmptyTarget) {
  TempDir tmp;
  fs::path root = tmp / "ws";
  scaffold_workspace(root);
  auto before = testing::snapshot(root);
  EXPECT_EQ(code_of([&] { scaffold_workspace(root); }), ErrorCode::TargetNotEmpty);
  EXPECT_TRUE(testing::diff(before, testing::snapshot(root)).empty());
}

TEST(Scaffold, AllowsDirectoryWithOnlyHiddenEntries) {
  TempDir tmp;
  fs::path root = tmp / "ws";
  testing::spit(root / ".git/HEAD", "ref");
  EXPECT_NO_THROW(scaffold_workspace(root));
}

TEST(Load, MissingConfigIsNotAWorkspace) {
  TempDir tmp;
  testing::spit(tmp / "SOUL.md", "# Soul\n");
  EXPECT_EQ(code_of([&] { load_state(tmp.path()); }), ErrorCode::NotAWorkspace);
}

TEST(Load, MalformedConfigIsAnError) {
  TempDir tmp;
  fs::path root = tmp / "ws";
  scaffold_workspace(root);
  testing::spit(root / "nfd.json", "{ not json");
  EXPECT_EQ(code_of([&] { load_state(root); }), ErrorCode::ParseError);
}

TEST(Load, MiniAnalystFixture) {
  TempDir tmp;
  fs::path root = testing::copy_fixture("mini-analyst", tmp / "ws");
  auto loaded = load_state(root);
  const auto& s = loaded.state;
  EXPECT_EQ(s.constitutional.documents.size(), 4u);
  ASSERT_EQ(s.skills.size(), 3u);
  EXPECT_EQ(s.skills[0].name, "earnings-analysis");
  EXPECT_EQ(s.experiential.entries.size(), 42u);
  EXPECT_TRUE(check_invariants(s).empty());
  auto* ctx_entry = s.experiential.find(*EntryId::parse("2025-01-13#0002"));
  ASSERT_NE(ctx_entry, nullptr);
  EXPECT_FALSE(ctx_entry->context.empty());
}

TEST(Invariants, DuplicateSkillNamesAreRejected) {
  TempDir tmp;
  fs::path root = testing::copy_fixture("mini-analyst", tmp / "ws");
  auto state = load_state(root).state;
  state.skills.push_back(state.skills.front());
  EXPECT_EQ(code_of([&] { validate_state(state); }), ErrorCode::InvariantViolation);
  auto v = check_invariants(state);
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v.front().find("skill names unique"), std::string::npos);
}

TEST(Invariants, ConfirmedPrincipleNeedsSourceOrUserOrigin) {
  TempDir tmp;
  auto state = scaffold_workspace(tmp / "ws");
  state.constitutional.principles.push_back({"P-0001", "x", PrincipleStatus::Confirmed, {}, false});
  EXPECT_FALSE(check_invariants(state).empty());
  state.constitutional.principles.back().user_origin = true;
  EXPECT_TRUE(check_invariants(state).empty());
}

TEST(Invariants, DanglingProvenanceIsReported) {
  TempDir tmp;
  fs::path root = testing::copy_fixture("mini-analyst", tmp / "ws");
  auto state = load_state(root).state;
  state.experiential.archived_groups.push_back({"b", {*EntryId::parse("2030-01-01#0001")}, "x", 1});
  EXPECT_FALSE(check_invariants(state).empty());
}

TEST(Session, AppendChangesOnlyDayLogAndIndex) {
  TempDir tmp;
  fs::path root = testing::copy_fixture("mini-analyst", tmp / "ws");
  {
    auto ws = Workspace::open(root, LockMode::Exclusive);
    ws.commit();  // materializes the index
  }
  auto before = testing::snapshot(root);
  {
    auto ws = Workspace::open(root, LockMode::Exclusive);
    NewEntry e;
    e.date = *Date::parse("2025-01-21");
    e.tags = {"INSIGHT"};
    e.body = "Guidance language softens before misses";
    append_entry(ws.state, e, ws.lexicon, &ws.index);
    auto writes = ws.commit();
    EXPECT_EQ(writes.size(), 2u);
  }
  auto d = testing::diff(before, testing::snapshot(root));
  EXPECT_TRUE(d.added.empty());
  EXPECT_TRUE(d.removed.empty());
  EXPECT_EQ(d.changed, (std::vector<std::string>{"memory/2025-01-21.md", "memory/index/shard.json"}));
  std::string old_log = before.at("memory/2025-01-21.md");
  std::string new_log = testing::slurp(root / "memory/2025-01-21.md");
  EXPECT_EQ(new_log.substr(0, old_log.size()), old_log);
}

TEST(Session, CommitOfUnchangedStateOnlyMaterializesIndex) {
  TempDir tmp;
  fs::path root = testing::copy_fixture("case-study", tmp / "ws");
  auto before = testing::snapshot(root);
  {
    auto ws = Workspace::open(root, LockMode::Exclusive);
    auto first = ws.commit();
    ASSERT_EQ(first.size(), 1u);
    EXPECT_EQ(first[0].path, kIndexFile);
  }
  auto d = testing::diff(before, testing::snapshot(root));
  EXPECT_EQ(d.added, std::vector<std::string>{kIndexFile});
  EXPECT_TRUE(d.changed.empty());
  before = testing::snapshot(root);
  {
    auto ws = Workspace::open(root, LockMode::Exclusive);
    EXPECT_TRUE(ws.commit().empty());
  }
  EXPECT_TRUE(testing::diff(before, testing::snapshot(root)).empty());
}

TEST(Session, SharedOpenCannotCommit) {
  TempDir tmp;
  fs::path root = testing::copy_fixture("mini-analyst", tmp / "ws");
  auto ws = Workspace::open(root, LockMode::Shared);
  EXPECT_EQ(code_of([&] { ws.commit(); }), ErrorCode::LockHeld);
}

TEST(Session, SecondWriterIsRefused) {
  TempDir tmp;
  fs::path root = testing::copy_fixture("mini-analyst", tmp / "ws");
  auto ws = Workspace::open(root, LockMode::Exclusive);
  EXPECT_EQ(code_of([&] { Workspace::open(root, LockMode::Exclusive); }), ErrorCode::LockHeld);
  EXPECT_EQ(code_of([&] { Workspace::open(root, LockMode::Shared); }), ErrorCode::LockHeld);
}

TEST(Session, ReadersShareTheLock) {
  TempDir tmp;
  fs::path root = testing::copy_fixture("mini-analyst", tmp / "ws");
  auto a = Workspace::open(root, LockMode::Shared);
  EXPECT_NO_THROW(Workspace::open(root, LockMode::Shared));
}

TEST(Session, RewritingPastLogBytesIsRefused) {
  TempDir tmp;
  fs::path root = testing::copy_fixture("mini-analyst", tmp / "ws");
  auto before = testing::snapshot(root);
  auto ws = Workspace::open(root, LockMode::Exclusive);
  auto& log = ws.state.experiential.logs.begin()->second;
  log[2] = log[2] == 'x' ? 'y' : 'x';
  EXPECT_EQ(code_of([&] { ws.commit(); }), ErrorCode::InvariantViolation);
  EXPECT_TRUE(testing::diff(before, testing::snapshot(root)).empty());
}

TEST(Render, SkeletonIsSmallAndHasAllSlots) {
  TempDir tmp;
  auto state = scaffold_workspace(tmp / "ws");
  auto r = render_constitutional(state);
  EXPECT_LT(r.token_count, 300u);
  EXPECT_FALSE(r.over_budget);
  for (auto name : kConstitutionalDocs) {
    EXPECT_NE(r.text.find("=== " + std::string(name) + " ==="), std::string::npos) << name;
  }
}

TEST(Render, FlagsOverBudget) {
  TempDir tmp;
  auto state = scaffold_workspace(tmp / "ws");
  std::string big;
  for (int i = 0; i < 2500; ++i) big += "word ";
  state.constitutional.documents["USER.md"] = big + "\n";
  auto r = render_constitutional(state);
  EXPECT_GT(r.token_count, 2500u);
  EXPECT_TRUE(r.over_budget);
  state.config.constitutional_budget_tokens = 5000;
  EXPECT_FALSE(render_constitutional(state).over_budget);
}

TEST(Render, MemorySlotCarriesPrinciples) {
  TempDir tmp;
  auto state = scaffold_workspace(tmp / "ws");
  state.constitutional.principles.push_back({"P-0001", "Check dilution", PrincipleStatus::Proposed, {}, true});
  auto r = render_constitutional(state);
  EXPECT_NE(r.text.find("[P-0001|proposed] Check dilution"), std::string::npos);
  EXPECT_NE(canonical_document(state, "MEMORY.md").find("P-0001"), std::string::npos);
}

}  // namespace
}  // namespace nfd
