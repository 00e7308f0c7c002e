#include <gtest/gtest.h>

#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "corpus_gen.hpp"
#include "nfd/cli/cli.hpp"
#include "nfd/crystal/review.hpp"
#include "nfd/gateway/server.hpp"
#include "nfd/model/lock.hpp"
#include "nfd/model/workspace.hpp"
#include "nfd/session.hpp"
#include "workspace_fixture.hpp"

namespace nfd {
namespace {

using gateway::ApiRequest;
using gateway::ApiResponse;
using nlohmann::json;
using testing::TempDir;

const char* kNow = "2025-01-22T10:00:00Z";

gateway::Clock pinned_clock() {
  return [] { return *Timestamp::parse(kNow); };
}

int run_cli(const fs::path& root, std::vector<std::string> args) {
  std::istringstream in;
  std::ostringstream out, err;
  std::map<std::string, std::string> env{{"NFD_WORKSPACE", root.string()}, {"NFD_NOW", kNow}};
  int code = cli::run(args, env, in, out, err);
  EXPECT_EQ(code, 0) << err.str();
  return code;
}

ApiResponse get(const fs::path& root, const std::string& path, std::map<std::string, std::string> params = {}) {
  return gateway::dispatch(root, {"GET", path, std::move(params), ""}, pinned_clock());
}

ApiResponse post(const fs::path& root, const std::string& path, const std::string& body,
                 std::map<std::string, std::string> params = {}) {
  return gateway::dispatch(root, {"POST", path, std::move(params), body}, pinned_clock());
}

class Gateway : public ::testing::Test {
 protected:
  void SetUp() override {
    root = testing::copy_fixture("mini-analyst", tmp / "ws");
    ASSERT_EQ(run_cli(root, {"crystallize", "open", "--tags", "ERROR"}), 0);
    batch = *Workspace::open(root, LockMode::Shared).crystal.find(kBatch);
  }
  json reject_all() const {
    DecisionDocument doc{batch.batch_id, {}};
    for (const auto& c : batch.candidates) doc.decisions.push_back({c.id, Verdict::Reject, {}, {}, {}, {}});
    return decisions_to_json(doc);
  }
  static constexpr const char* kBatch = "CC-20250122-1";
  TempDir tmp;
  fs::path root;
  ReviewBatch batch;
};

void expect_error_body(const ApiResponse& r, int status) {
  EXPECT_EQ(r.status, status) << r.body.dump();
  EXPECT_EQ(r.body["status"], status);
  EXPECT_TRUE(r.body["code"].is_string());
  EXPECT_TRUE(r.body["message"].is_string());
}

TEST_F(Gateway, PendingListHasOneBatch) {
  auto r = get(root, "/api/batches", {{"status", "pending"}});
  ASSERT_EQ(r.status, 200);
  ASSERT_EQ(r.body.size(), 1u);
  EXPECT_EQ(r.body[0]["batch_id"], kBatch);
  EXPECT_TRUE(get(root, "/api/batches", {{"status", "integrated"}}).body.empty());
  expect_error_body(get(root, "/api/batches", {{"status", "open"}}), 422);
}

TEST_F(Gateway, GetBatchMatchesDocumentOnDisk) {
  auto r = get(root, std::string("/api/batches/") + kBatch);
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body, json::parse(testing::slurp(root / "crystal/pending" / (std::string(kBatch) + ".json"))));
  expect_error_body(get(root, "/api/batches/CC-19990101-1"), 404);
}

TEST_F(Gateway, RejectAllDecidesWithNoAssets) {
  auto skills_before = load_state(root).state.skills.size();
  auto r = post(root, std::string("/api/batches/") + kBatch + "/decisions", reject_all().dump(),
                {{"integrate", "true"}});
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["batch"]["status"], "integrated");
  EXPECT_EQ(load_state(root).state.skills.size(), skills_before);

  TempDir other;
  fs::path root2 = testing::copy_fixture("mini-analyst", other / "ws");
  ASSERT_EQ(run_cli(root2, {"crystallize", "open", "--tags", "ERROR"}), 0);
  auto decided = post(root2, std::string("/api/batches/") + kBatch + "/decisions", reject_all().dump());
  ASSERT_EQ(decided.status, 200);
  EXPECT_EQ(decided.body["batch"]["status"], "decided");
  EXPECT_TRUE(decided.body["integration"].is_null());
  EXPECT_TRUE(Workspace::open(root2, LockMode::Shared).crystal.find(kBatch)->drafts.empty());
}

TEST_F(Gateway, IntegratedBatchIsConflict) {
  std::string path = std::string("/api/batches/") + kBatch + "/decisions";
  ASSERT_EQ(post(root, path, reject_all().dump(), {{"integrate", "true"}}).status, 200);
  auto before = testing::snapshot(root);
  expect_error_body(post(root, path, reject_all().dump()), 409);
  EXPECT_TRUE(testing::diff(before, testing::snapshot(root)).empty());
}

TEST_F(Gateway, UnknownBatchIsNotFound) {
  expect_error_body(post(root, "/api/batches/CC-19990101-1/decisions", reject_all().dump()), 404);
  expect_error_body(get(root, "/api/skills/no-such-skill"), 404);
  expect_error_body(get(root, "/api/nowhere"), 404);
}

TEST_F(Gateway, InvalidDecisionsAreUnprocessable) {
  std::string path = std::string("/api/batches/") + kBatch + "/decisions";
  auto before = testing::snapshot(root);
  expect_error_body(post(root, path, "{not json"), 422);
  expect_error_body(post(root, path, json{{"batch_id", kBatch}, {"decisions", json::array()}}.dump()), 422);
  json bad = reject_all();
  bad["decisions"][0]["verdict"] = "maybe";
  expect_error_body(post(root, path, bad.dump()), 422);
  EXPECT_TRUE(testing::diff(before, testing::snapshot(root)).empty());
  EXPECT_EQ(get(root, std::string("/api/batches/") + kBatch).body["status"], "pending");
}

TEST_F(Gateway, HeldLockIsLocked) {
  std::string path = std::string("/api/batches/") + kBatch + "/decisions";
  {
    Workspace writer = Workspace::open(root, LockMode::Exclusive);
    expect_error_body(post(root, path, reject_all().dump()), 423);
    expect_error_body(get(root, "/api/metrics"), 423);
  }
  {
    Workspace reader = Workspace::open(root, LockMode::Shared);
    EXPECT_EQ(get(root, "/api/metrics").status, 200);
    expect_error_body(post(root, path, reject_all().dump()), 423);
  }
  EXPECT_EQ(post(root, path, reject_all().dump()).status, 200);
}

TEST_F(Gateway, ApiAndCliProduceIdenticalWorkspaces) {
  TempDir other;
  fs::path cli_root = testing::copy_fixture("mini-analyst", other / "ws");
  ASSERT_EQ(run_cli(cli_root, {"crystallize", "open", "--tags", "ERROR"}), 0);
  json doc = decisions_to_json(testing::approve_all(batch, "error-patterns"));
  testing::spit(other / "decisions.json", doc.dump(2));

  auto r = post(root, std::string("/api/batches/") + kBatch + "/decisions", doc.dump(), {{"integrate", "true"}});
  ASSERT_EQ(r.status, 200) << r.body.dump();
  ASSERT_EQ(run_cli(cli_root, {"crystallize", "decide", kBatch, "--file", (other / "decisions.json").string(),
                               "--integrate"}),
            0);

  auto api_tree = testing::snapshot(root);
  auto cli_tree = testing::snapshot(cli_root);
  auto d = testing::diff(api_tree, cli_tree);
  EXPECT_TRUE(d.empty()) << "added " << d.added.size() << " removed " << d.removed.size() << " changed "
                         << d.changed.size();
  EXPECT_TRUE(api_tree.count("skills/error-patterns/SKILL.md"));
}

TEST_F(Gateway, ReadEndpoints) {
  auto metrics = get(root, "/api/metrics");
  ASSERT_EQ(metrics.status, 200);
  EXPECT_TRUE(metrics.body.contains("eta_history"));

  auto entries = get(root, "/api/entries", {{"q", "capex weighting"}, {"limit", "2"}});
  ASSERT_EQ(entries.status, 200);
  EXPECT_LE(entries.body.size(), 2u);
  expect_error_body(get(root, "/api/entries", {{"limit", "two"}}), 422);
  expect_error_body(get(root, "/api/entries", {{"as_of", "yesterday"}}), 422);

  EXPECT_EQ(get(root, "/api/history").status, 200);
  auto state = load_state(root).state;
  ASSERT_FALSE(state.skills.empty());
  auto skill = get(root, "/api/skills/" + state.skills.front().name);
  ASSERT_EQ(skill.status, 200);
  EXPECT_EQ(skill.body["name"], state.skills.front().name);
}

TEST_F(Gateway, ReadsNeverWrite) {
  auto before = testing::snapshot(root);
  get(root, "/api/batches");
  get(root, "/api/metrics");
  get(root, "/api/entries", {{"q", "capex"}});
  get(root, "/api/history");
  EXPECT_TRUE(testing::diff(before, testing::snapshot(root)).empty());
}

int free_port() {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr);
  socklen_t len = sizeof addr;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  ::close(fd);
  return ntohs(addr.sin_port);
}

TEST(GatewayHttp, ServesOverLoopback) {
  // The server thread never returns, so its workspace outlives the test.
  static TempDir tmp;
  fs::path root = testing::copy_fixture("mini-analyst", tmp / "ws");
  ASSERT_EQ(run_cli(root, {"crystallize", "open", "--tags", "ERROR"}), 0);
  int port = free_port();
  std::thread([root, port] { gateway::serve(root, "127.0.0.1", port, pinned_clock()); }).detach();

  httplib::Client client("127.0.0.1", port);
  httplib::Result res;
  for (int i = 0; i < 100 && !res; ++i) {
    res = client.Get("/api/batches?status=pending");
    if (!res) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");
  EXPECT_EQ(json::parse(res->body).size(), 1u);

  auto missing = client.Post("/api/batches/CC-19990101-1/decisions", "{}", "application/json");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(json::parse(missing->body)["code"], "UnknownBatch");
}

}  // namespace
}  // namespace nfd
