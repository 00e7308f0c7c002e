#include "nfd/crystal/review.hpp"

#include <fmt/format.h>

#include "nfd/common/error.hpp"

namespace nfd {

using nlohmann::json;

namespace {

json ids_to_json(const std::vector<EntryId>& ids) {
  json arr = json::array();
  for (const auto& id : ids) arr.push_back(id.str());
  return arr;
}

std::vector<EntryId> ids_from_json(const json& arr) {
  std::vector<EntryId> out;
  for (const auto& v : arr) {
    auto id = EntryId::parse(v.get<std::string>());
    if (!id) throw Error(ErrorCode::ParseError, "bad entry id " + v.get<std::string>());
    out.push_back(*id);
  }
  return out;
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_string()) throw Error(ErrorCode::InvalidDecision, fmt::format("{} must be a string", key));
  return j[key].get<std::string>();
}

Timestamp timestamp_field(const json& j, const char* key) {
  auto ts = Timestamp::parse(j.at(key).get<std::string>());
  if (!ts) throw Error(ErrorCode::ParseError, fmt::format("bad timestamp in {}", key));
  return *ts;
}

}  // namespace

std::string_view batch_status_name(BatchStatus s) {
  switch (s) {
    case BatchStatus::Pending: return "pending";
    case BatchStatus::Decided: return "decided";
    case BatchStatus::Integrated: return "integrated";
  }
  return "pending";
}

std::optional<BatchStatus> parse_batch_status(std::string_view s) {
  for (auto b : {BatchStatus::Pending, BatchStatus::Decided, BatchStatus::Integrated}) {
    if (batch_status_name(b) == s) return b;
  }
  return std::nullopt;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Approve: return "approve";
    case Verdict::Reject: return "reject";
    case Verdict::Edit: return "edit";
  }
  return "reject";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  for (auto v : {Verdict::Approve, Verdict::Reject, Verdict::Edit}) {
    if (verdict_name(v) == s) return v;
  }
  return std::nullopt;
}

const PatternCandidate* ReviewBatch::find(std::string_view candidate_id) const {
  for (const auto& c : candidates) {
    if (c.id == candidate_id) return &c;
  }
  return nullptr;
}

json candidate_to_json(const PatternCandidate& c) {
  return json{{"id", c.id},
              {"tag_signature", c.tag_signature},
              {"support_entries", ids_to_json(c.support_entries)},
              {"score", c.score},
              {"exemplar_text", c.exemplar_text},
              {"proposed_category", std::string(proposed_category_name(c.proposed_category))},
              {"weak", c.weak}};
}

json batch_to_json(const ReviewBatch& b) {
  json candidates = json::array();
  for (const auto& c : b.candidates) candidates.push_back(candidate_to_json(c));
  json j{{"batch_id", b.batch_id},
         {"created_at", b.created_at.str()},
         {"scope", scope_to_json(b.scope)},
         {"candidates", candidates},
         {"status", std::string(batch_status_name(b.status))}};
  if (b.status != BatchStatus::Pending) {
    json drafts = json::array();
    for (const auto& d : b.drafts) {
      json dj{{"candidate_id", d.candidate_id},
              {"kind", std::string(proposed_category_name(d.kind))},
              {"tag_signature", d.tag_signature},
              {"target_skill", d.target_skill},
              {"reference_file", d.reference_file},
              {"section", d.section},
              {"body", d.body},
              {"support_entries", ids_to_json(d.support_entries)},
              {"corpus_support", d.corpus_support},
              {"contradictions", d.contradictions},
              {"decontextualized", d.decontextualized}};
      dj["principle_text"] = d.principle_text ? json(*d.principle_text) : json(nullptr);
      drafts.push_back(std::move(dj));
    }
    json dropped = json::array();
    for (const auto& d : b.dropped) dropped.push_back({{"candidate_id", d.candidate_id}, {"reason", d.reason}});
    j["drafts"] = drafts;
    j["dropped"] = dropped;
  }
  return j;
}

ReviewBatch batch_from_json(const json& j) {
  ReviewBatch b;
  b.batch_id = j.at("batch_id").get<std::string>();
  b.created_at = timestamp_field(j, "created_at");
  b.scope = scope_from_json(j.at("scope"));
  auto status = parse_batch_status(j.value("status", "pending"));
  if (!status) throw Error(ErrorCode::ParseError, "unknown batch status");
  b.status = *status;
  for (const auto& cj : j.at("candidates")) {
    PatternCandidate c;
    c.id = cj.at("id").get<std::string>();
    c.tag_signature = cj.at("tag_signature").get<std::vector<std::string>>();
    c.support_entries = ids_from_json(cj.at("support_entries"));
    c.score = cj.at("score").get<double>();
    c.exemplar_text = cj.at("exemplar_text").get<std::string>();
    auto cat = parse_proposed_category(cj.at("proposed_category").get<std::string>());
    if (!cat) throw Error(ErrorCode::ParseError, "unknown proposed_category");
    c.proposed_category = *cat;
    c.weak = cj.value("weak", false);
    b.candidates.push_back(std::move(c));
  }
  if (j.contains("drafts")) {
    for (const auto& dj : j["drafts"]) {
      DraftAsset d;
      d.candidate_id = dj.at("candidate_id").get<std::string>();
      auto kind = parse_proposed_category(dj.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::ParseError, "unknown draft kind");
      d.kind = *kind;
      d.tag_signature = dj.at("tag_signature").get<std::vector<std::string>>();
      d.target_skill = dj.at("target_skill").get<std::string>();
      d.reference_file = dj.at("reference_file").get<std::string>();
      d.section = dj.at("section").get<std::string>();
      d.body = dj.at("body").get<std::string>();
      d.support_entries = ids_from_json(dj.at("support_entries"));
      d.corpus_support = dj.at("corpus_support").get<int>();
      d.contradictions = dj.at("contradictions").get<int>();
      d.decontextualized = dj.at("decontextualized").get<bool>();
      if (dj.contains("principle_text") && !dj["principle_text"].is_null()) {
        d.principle_text = dj["principle_text"].get<std::string>();
      }
      b.drafts.push_back(std::move(d));
    }
  }
  if (j.contains("dropped")) {
    for (const auto& dj : j["dropped"]) {
      b.dropped.push_back({dj.at("candidate_id").get<std::string>(), dj.at("reason").get<std::string>()});
    }
  }
  return b;
}

json decisions_to_json(const DecisionDocument& d) {
  json arr = json::array();
  for (const auto& r : d.decisions) {
    json j{{"candidate_id", r.candidate_id}, {"verdict", std::string(verdict_name(r.verdict))}};
    if (r.edited_text) j["edited_text"] = *r.edited_text;
    if (r.target_skill) j["target_skill"] = *r.target_skill;
    if (!r.generalization_notes.empty()) {
      json notes = json::array();
      for (const auto& s : r.generalization_notes) notes.push_back({{"literal", s.literal}, {"placeholder", s.placeholder}});
      j["generalization_notes"] = notes;
    }
    if (r.principle_text) j["principle_text"] = *r.principle_text;
    arr.push_back(std::move(j));
  }
  return json{{"batch_id", d.batch_id}, {"decisions", arr}};
}

DecisionDocument decisions_from_json(const json& j) {
  auto bad = [](const std::string& why) { return Error(ErrorCode::InvalidDecision, "decision document: " + why); };
  if (!j.is_object()) throw bad("expected an object");
  DecisionDocument doc;
  if (j.contains("batch_id")) {
    if (!j["batch_id"].is_string()) throw bad("batch_id must be a string");
    doc.batch_id = j["batch_id"].get<std::string>();
  }
  if (!j.contains("decisions") || !j["decisions"].is_array()) throw bad("decisions must be an array");
  for (const auto& dj : j["decisions"]) {
    if (!dj.is_object()) throw bad("each decision must be an object");
    ReviewDecision r;
    if (!dj.contains("candidate_id") || !dj["candidate_id"].is_string()) throw bad("candidate_id is required");
    r.candidate_id = dj["candidate_id"].get<std::string>();
    if (!dj.contains("verdict") || !dj["verdict"].is_string()) throw bad("verdict is required");
    auto v = parse_verdict(dj["verdict"].get<std::string>());
    if (!v) throw bad("verdict must be approve, reject or edit");
    r.verdict = *v;
    r.edited_text = optional_string(dj, "edited_text");
    r.target_skill = optional_string(dj, "target_skill");
    r.principle_text = optional_string(dj, "principle_text");
    if (dj.contains("generalization_notes") && !dj["generalization_notes"].is_null()) {
      const auto& notes = dj["generalization_notes"];
      if (!notes.is_array()) throw bad("generalization_notes must be an array");
      for (const auto& n : notes) {
        if (!n.is_object() || !n.contains("literal") || !n.contains("placeholder") || !n["literal"].is_string() ||
            !n["placeholder"].is_string()) {
          throw bad("generalization note needs string literal and placeholder");
        }
        if (n["literal"].get<std::string>().empty()) throw bad("generalization literal is empty");
        r.generalization_notes.push_back({n["literal"].get<std::string>(), n["placeholder"].get<std::string>()});
      }
    }
    doc.decisions.push_back(std::move(r));
  }
  return doc;
}

json history_to_json(const HistoryRecord& h) {
  json assets = json::array();
  for (const auto& a : h.assets) assets.push_back({{"name", a.name}, {"version", a.version}, {"content_hash", a.content_hash}});
  return json{{"batch_id", h.batch_id},
              {"integrated_at", h.integrated_at.str()},
              {"assets", assets},
              {"entries_consolidated", h.entries_consolidated},
              {"delta_structure", h.delta_structure},
              {"eta", h.eta ? json(*h.eta) : json(nullptr)},
              {"principles_updated", h.principles_updated}};
}

HistoryRecord history_from_json(const json& j) {
  HistoryRecord h;
  h.batch_id = j.at("batch_id").get<std::string>();
  h.integrated_at = timestamp_field(j, "integrated_at");
  for (const auto& a : j.at("assets")) {
    h.assets.push_back({a.at("name").get<std::string>(), a.at("version").get<int>(), a.at("content_hash").get<std::string>()});
  }
  h.entries_consolidated = j.at("entries_consolidated").get<int>();
  h.delta_structure = j.at("delta_structure").get<double>();
  if (j.contains("eta") && !j["eta"].is_null()) h.eta = j["eta"].get<double>();
  if (j.contains("principles_updated")) h.principles_updated = j["principles_updated"].get<std::vector<std::string>>();
  return h;
}

}  // namespace nfd
