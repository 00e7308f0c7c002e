#include "nfd/gateway/server.hpp"

#include <regex>

#include <fmt/format.h>
#include <httplib.h>

#include "nfd/common/error.hpp"
#include "nfd/common/text.hpp"
#include "nfd/crystal/pipeline.hpp"
#include "nfd/index/search.hpp"
#include "nfd/metrics/metrics.hpp"
#include "nfd/model/skill.hpp"
#include "nfd/session.hpp"

namespace nfd::gateway {

using nlohmann::json;

namespace {

ApiResponse api_error(int status, std::string_view code, const std::string& message) {
  return {status, json{{"status", status}, {"code", std::string(code)}, {"message", message}}};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownBatch: return 404;
    case ErrorCode::BatchNotPending:
    case ErrorCode::BatchNotDecided:
    case ErrorCode::OverlappingPendingBatch: return 409;
    case ErrorCode::InvalidDecision:
    case ErrorCode::MissingDecision:
    case ErrorCode::UnknownTargetSkill:
    case ErrorCode::InvalidArgument:
    case ErrorCode::ParseError: return 422;
    case ErrorCode::LockHeld: return 423;
    default: return 500;
  }
}

std::string param(const ApiRequest& r, const std::string& key, const std::string& fallback = "") {
  auto it = r.params.find(key);
  return it == r.params.end() ? fallback : it->second;
}

std::vector<std::string> list_param(const ApiRequest& r, const std::string& key) {
  std::vector<std::string> out;
  for (auto& t : text::split(param(r, key), ',')) {
    std::string s(text::trim(t));
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

ApiResponse list_batches(const fs::path& root, const ApiRequest& r) {
  Workspace ws = Workspace::open(root, LockMode::Shared);
  std::optional<BatchStatus> filter;
  if (auto s = param(r, "status"); !s.empty()) {
    filter = parse_batch_status(s);
    if (!filter) return api_error(422, "InvalidArgument", "status must be pending, decided or integrated");
  }
  json arr = json::array();
  for (const auto& [id, b] : ws.crystal.batches) {
    if (!filter || b.status == *filter) arr.push_back(batch_to_json(b));
  }
  return {200, arr};
}

ApiResponse get_batch(const fs::path& root, const std::string& id) {
  Workspace ws = Workspace::open(root, LockMode::Shared);
  const ReviewBatch* b = ws.crystal.find(id);
  if (!b) return api_error(404, "UnknownBatch", "unknown batch " + id);
  return {200, batch_to_json(*b)};
}

ApiResponse post_decisions(const fs::path& root, const std::string& id, const ApiRequest& r, const Clock& clock) {
  Workspace ws = Workspace::open(root, LockMode::Exclusive);
  if (!ws.crystal.find(id)) return api_error(404, "UnknownBatch", "unknown batch " + id);
  json body;
  try {
    body = json::parse(r.body);
  } catch (const json::parse_error& e) {
    return api_error(422, "InvalidDecision", std::string("malformed JSON: ") + e.what());
  }
  DecisionDocument doc = decisions_from_json(body);
  apply_decisions(ws.state, ws.crystal, id, doc);
  std::optional<IntegrationReport> report;
  std::string integrate_flag = param(r, "integrate");
  if (integrate_flag == "true" || integrate_flag == "1") report = integrate(ws.state, ws.crystal, id, clock());
  ws.commit();
  json out{{"batch", batch_to_json(*ws.crystal.find(id))}};
  out["integration"] = report ? integration_to_json(*report) : json(nullptr);
  return {200, out};
}

ApiResponse get_metrics(const fs::path& root) {
  Workspace ws = Workspace::open(root, LockMode::Shared);
  json j = value_to_json(value(ws.state));
  json etas = json::array();
  for (const auto& h : ws.crystal.history_in_order()) {
    etas.push_back({{"batch_id", h.batch_id}, {"eta", h.eta ? json(*h.eta) : json(nullptr)}});
  }
  j["eta_history"] = etas;
  return {200, j};
}

ApiResponse get_entries(const fs::path& root, const ApiRequest& r, const Clock& clock) {
  Workspace ws = Workspace::open(root, LockMode::Shared);
  SearchQuery q;
  q.text = param(r, "q");
  for (auto& t : list_param(r, "tags")) q.required_tags.insert(t);
  for (auto& t : list_param(r, "exclude")) q.excluded_tags.insert(t);
  try {
    q.limit = std::stoi(param(r, "limit", "10"));
  } catch (const std::exception&) {
    return api_error(422, "InvalidArgument", "limit must be an integer");
  }
  if (auto s = param(r, "as_of"); !s.empty()) {
    auto d = Date::parse(s);
    if (!d) return api_error(422, "InvalidArgument", "as_of must be YYYY-MM-DD");
    q.as_of = *d;
  } else {
    q.as_of = clock().date();
  }
  q.decay_lambda = ws.state.config.decay_lambda;
  json arr = json::array();
  for (const auto& h : search(ws.index, ws.state.experiential, q)) {
    const ExperientialEntry* e = ws.state.experiential.find(h.entry_id);
    json item{{"entry_id", h.entry_id.str()},
              {"lexical_score", h.lexical_score},
              {"decay_factor", h.decay_factor},
              {"final_score", h.final_score},
              {"snippet", h.snippet}};
    if (e) {
      item["tags"] = e->tags;
      item["category"] = std::string(category_name(e->category));
      item["body"] = e->body;
    }
    arr.push_back(std::move(item));
  }
  return {200, arr};
}

ApiResponse get_skill(const fs::path& root, const std::string& name) {
  Workspace ws = Workspace::open(root, LockMode::Shared);
  const SkillAsset* s = ws.state.find_skill(name);
  if (!s) return api_error(404, "UnknownSkill", "unknown skill " + name);
  json versions = json::array();
  for (const auto& v : s->versions) {
    versions.push_back({{"version", v.version},
                        {"batch_id", v.batch_id},
                        {"timestamp", v.timestamp.str()},
                        {"change_summary", v.change_summary},
                        {"content_hash", v.content_hash}});
  }
  json sections = json::array();
  for (const auto& sec : s->sections()) {
    json prov = json::array();
    for (const auto& id : sec.provenance) prov.push_back(id.str());
    sections.push_back({{"file", sec.file},
                        {"heading", sec.heading},
                        {"kind", sec.kind},
                        {"validated", sec.flags.validated},
                        {"decontextualized", sec.flags.decontextualized},
                        {"has_examples", sec.flags.has_examples},
                        {"has_conditions", sec.flags.has_conditions},
                        {"provenance", prov}});
  }
  json scripts = json::array();
  for (const auto& [file, content] : s->scripts) scripts.push_back(file);
  return {200, json{{"name", s->name},
                    {"instructions", s->instructions},
                    {"references", s->references},
                    {"scripts", scripts},
                    {"versions", versions},
                    {"sections", sections}}};
}

ApiResponse get_history(const fs::path& root) {
  Workspace ws = Workspace::open(root, LockMode::Shared);
  json arr = json::array();
  for (const auto& h : ws.crystal.history_in_order()) arr.push_back(history_to_json(h));
  return {200, arr};
}

}  // namespace

ApiResponse dispatch(const fs::path& root, const ApiRequest& r, const Clock& clock) {
  static const std::regex batch_path(R"(/api/batches/([A-Za-z0-9_-]+))");
  static const std::regex decisions_path(R"(/api/batches/([A-Za-z0-9_-]+)/decisions)");
  static const std::regex skill_path(R"(/api/skills/([a-z0-9-]+))");
  std::smatch m;
  try {
    if (r.method == "GET") {
      if (r.path == "/api/batches") return list_batches(root, r);
      if (std::regex_match(r.path, m, batch_path)) return get_batch(root, m[1].str());
      if (r.path == "/api/metrics") return get_metrics(root);
      if (r.path == "/api/entries") return get_entries(root, r, clock);
      if (std::regex_match(r.path, m, skill_path)) return get_skill(root, m[1].str());
      if (r.path == "/api/history") return get_history(root);
    } else if (r.method == "POST") {
      if (std::regex_match(r.path, m, decisions_path)) return post_decisions(root, m[1].str(), r, clock);
    }
    return api_error(404, "NotFound", fmt::format("no route for {} {}", r.method, r.path));
  } catch (const Error& e) {
    return api_error(status_for(e.code()), to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return api_error(500, "Internal", e.what());
  }
}

void serve(const fs::path& root, const std::string& host, int port, Clock clock) {
  httplib::Server server;
  auto handle = [root, clock](const httplib::Request& req, httplib::Response& res) {
    ApiRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.params[k] = v;
    r.body = req.body;
    ApiResponse out = dispatch(root, r, clock);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  server.Get(R"(/api/.*)", handle);
  server.Post(R"(/api/.*)", handle);
  if (!server.bind_to_port(host, port)) {
    throw Error(ErrorCode::IoFailure, fmt::format("cannot bind {}:{}", host, port));
  }
  server.listen_after_bind();
}

}  // namespace nfd::gateway
