#include "nfd/crystal/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "nfd/common/error.hpp"
#include "nfd/common/hash.hpp"
#include "nfd/common/text.hpp"
#include "nfd/index/search.hpp"
#include "nfd/ingest/entry_grammar.hpp"
#include "nfd/metrics/metrics.hpp"
#include "nfd/model/principles.hpp"
#include "nfd/model/skill.hpp"
#include "nfd/model/workspace.hpp"

namespace nfd {

using nlohmann::json;

namespace {

std::set<EntryId> selected_ids(const ExperientialCorpus& corpus, const Scope& scope) {
  std::set<EntryId> ids;
  for (const auto& e : scope_filter(corpus, scope)) ids.insert(e.id);
  return ids;
}

std::string heading_of(const std::vector<std::string>& signature) {
  std::string h;
  for (const auto& t : signature) h += "[" + t + "]";
  return h;
}

// Body lines that would read as markdown structure are escaped.
std::string escape_body(std::string_view body) {
  std::string out;
  for (std::string_view line : text::lines(body)) {
    std::string_view t = text::trim(line);
    if (!t.empty() && (t.front() == '#' || t.substr(0, 4) == "<!--")) out += '\\';
    out += line;
    out += '\n';
  }
  return out;
}

std::optional<std::string> default_target(ProposedCategory kind) {
  switch (kind) {
    case ProposedCategory::ErrorPattern: return std::string(kErrorPatternsSkill);
    case ProposedCategory::CaseLibraryEntry: return std::string(kCaseLibrarySkill);
    default: return std::nullopt;
  }
}

std::string one_line(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : text::trim(s)) {
    if (c == '\n' || c == '\r' || c == '\t' || c == ' ') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::string new_skill_instructions(const std::string& name) {
  return fmt::format(
      "# {}\n\n"
      "Crystallized reference knowledge. Read the file under references/ that matches the tags of the task at "
      "hand before answering.\n",
      name);
}

}  // namespace

std::string next_batch_id(const CrystalStore& store, Date date) {
  std::string prefix = "CC-" + date.compact() + "-";
  int n = 0;
  for (const auto& [id, b] : store.batches) {
    if (id.rfind(prefix, 0) == 0) ++n;
  }
  std::string id;
  do {
    id = prefix + std::to_string(++n);
  } while (store.batches.count(id));
  return id;
}

ReviewBatch open_batch(const KnowledgeState& state, CrystalStore& store, const Scope& scope, Timestamp now) {
  check_scope(scope);
  auto selected = scope_filter(state.experiential, scope);
  std::set<EntryId> mine;
  for (const auto& e : selected) mine.insert(e.id);
  for (const auto& [id, b] : store.batches) {
    if (b.status != BatchStatus::Pending) continue;
    auto theirs = selected_ids(state.experiential, b.scope);
    for (const auto& b_candidate : b.candidates) theirs.insert(b_candidate.support_entries.begin(), b_candidate.support_entries.end());
    bool overlap = std::any_of(mine.begin(), mine.end(), [&](const EntryId& x) { return theirs.count(x) > 0; });
    if (overlap) {
      throw Error(ErrorCode::OverlappingPendingBatch, fmt::format("pending batch {} covers overlapping entries", id));
    }
  }
  ReviewBatch batch;
  batch.batch_id = next_batch_id(store, now.date());
  batch.created_at = now;
  batch.scope = scope;
  batch.candidates = extract_patterns(selected, state.config);
  batch.status = batch.candidates.empty() ? BatchStatus::Decided : BatchStatus::Pending;
  store.batches[batch.batch_id] = batch;
  return batch;
}

std::string decontextualize(std::string_view input, const std::vector<Substitution>& notes) {
  std::string s(input);
  for (const auto& n : notes) {
    if (n.literal.empty()) continue;
    std::string out;
    std::size_t pos = 0;
    while (true) {
      std::size_t hit = s.find(n.literal, pos);
      if (hit == std::string::npos) break;
      out.append(s, pos, hit - pos);
      out += n.placeholder;
      pos = hit + n.literal.size();
    }
    out.append(s, pos, std::string::npos);
    s = std::move(out);
  }
  return s;
}

std::string structure_section(const PatternCandidate& candidate, const std::string& batch_id, std::string_view body,
                              const std::vector<std::string>& example_snippets, bool decontextualized) {
  SectionMarker marker{{"batch", batch_id},
                       {"candidate", candidate.id},
                       {"decontextualized", decontextualized ? "true" : "false"},
                       {"kind", std::string(proposed_category_name(candidate.proposed_category))},
                       {"validated", "true"}};
  std::string out = "## " + heading_of(candidate.tag_signature) + "\n";
  out += render_section_marker(marker) + "\n\n";
  out += escape_body(body);
  out += "\n### Conditions\n\n";
  out += std::string(kConditionsStub) + "\n";
  if (!example_snippets.empty()) {
    out += "\n### Examples\n\n";
    for (const auto& s : example_snippets) out += "- " + s + "\n";
  }
  out += "\n### Provenance\n\n";
  for (const auto& id : candidate.support_entries) out += "- " + id.str() + "\n";
  return out;
}

std::string contradiction_tag(const std::vector<std::string>& signature) {
  return "CONTRADICTS-" + text::to_upper(tag_key(signature));
}

CorpusSupport corpus_support(const ExperientialCorpus& corpus, const std::vector<std::string>& signature,
                             std::string_view body, const EngineConfig& config) {
  CorpusSupport s;
  TermVector target = term_vector(body);
  std::string contra = contradiction_tag(signature);
  for (const auto& e : corpus.entries) {
    if (e.has_tag(contra)) ++s.contradictions;
    if (tag_signature(e.tags) != signature) continue;
    if (cosine_similarity(term_vector(e.body), target) >= config.similarity_threshold) ++s.support;
  }
  return s;
}

std::vector<DraftAsset> apply_decisions(const KnowledgeState& state, CrystalStore& store, const std::string& batch_id,
                                        const DecisionDocument& doc) {
  ReviewBatch* batch = store.find(batch_id);
  if (!batch) throw Error(ErrorCode::UnknownBatch, "unknown batch " + batch_id);
  if (batch->status != BatchStatus::Pending) {
    throw Error(ErrorCode::BatchNotPending,
                fmt::format("batch {} is {}, not pending", batch_id, batch_status_name(batch->status)));
  }
  if (!doc.batch_id.empty() && doc.batch_id != batch_id) {
    throw Error(ErrorCode::InvalidDecision, fmt::format("decision document is for {}, not {}", doc.batch_id, batch_id));
  }

  std::map<std::string, const ReviewDecision*> by_candidate;
  for (const auto& d : doc.decisions) {
    if (!batch->find(d.candidate_id)) {
      throw Error(ErrorCode::InvalidDecision, fmt::format("no candidate {} in batch {}", d.candidate_id, batch_id));
    }
    if (!by_candidate.emplace(d.candidate_id, &d).second) {
      throw Error(ErrorCode::InvalidDecision, fmt::format("candidate {} has more than one decision", d.candidate_id));
    }
  }
  for (const auto& c : batch->candidates) {
    if (!by_candidate.count(c.id)) {
      throw Error(ErrorCode::MissingDecision, fmt::format("candidate {} has no decision", c.id));
    }
  }

  const EngineConfig& config = state.config;
  std::vector<DraftAsset> drafts;
  std::vector<DroppedDraft> dropped;
  for (const auto& c : batch->candidates) {
    const ReviewDecision& d = *by_candidate.at(c.id);
    if (d.verdict == Verdict::Reject) continue;
    if (d.verdict == Verdict::Edit && (!d.edited_text || text::trim(*d.edited_text).empty())) {
      throw Error(ErrorCode::InvalidDecision, fmt::format("edit of {} needs edited_text", c.id));
    }

    std::optional<std::string> target;
    if (d.target_skill && !text::trim(*d.target_skill).empty()) {
      target = std::string(text::trim(*d.target_skill));
      auto fallback = default_target(c.proposed_category);
      if (!state.find_skill(*target) && target != fallback) {
        throw Error(ErrorCode::UnknownTargetSkill, fmt::format("no skill named {}", *target));
      }
    } else if (c.proposed_category == ProposedCategory::SkillReference) {
      throw Error(ErrorCode::InvalidDecision, fmt::format("{} of {} needs target_skill", verdict_name(d.verdict), c.id));
    } else {
      target = default_target(c.proposed_category);
    }

    std::string raw = d.verdict == Verdict::Edit ? normalize_body(*d.edited_text) : c.exemplar_text;
    DraftAsset draft;
    draft.candidate_id = c.id;
    draft.kind = c.proposed_category;
    draft.tag_signature = c.tag_signature;
    draft.support_entries = c.support_entries;
    draft.decontextualized = !d.generalization_notes.empty();
    draft.body = decontextualize(raw, d.generalization_notes);

    auto support = corpus_support(state.experiential, c.tag_signature, draft.body, config);
    draft.corpus_support = support.support;
    draft.contradictions = support.contradictions;
    if (support.support < config.min_support) {
      dropped.push_back({c.id, "insufficient corpus support"});
      continue;
    }
    if (support.contradictions >= config.min_support) {
      dropped.push_back({c.id, fmt::format("contradicted by {} entries tagged {}", support.contradictions,
                                           contradiction_tag(c.tag_signature))});
      continue;
    }

    if (d.principle_text && !text::trim(*d.principle_text).empty()) {
      draft.principle_text = one_line(decontextualize(*d.principle_text, d.generalization_notes));
    } else if (c.proposed_category == ProposedCategory::PrincipleUpdate) {
      draft.principle_text = one_line(draft.body);
    }
    if (target) {
      std::vector<std::string> examples;
      for (const auto& id : c.support_entries) {
        if (examples.size() == 3) break;
        if (const auto* e = state.experiential.find(id)) {
          examples.push_back(id.str() + ": " + decontextualize(snippet_of(e->body), d.generalization_notes));
        }
      }
      draft.target_skill = *target;
      draft.reference_file = tag_key(c.tag_signature) + ".md";
      draft.section = structure_section(c, batch_id, draft.body, examples, draft.decontextualized);
    }
    drafts.push_back(std::move(draft));
  }

  DecisionDocument recorded = doc;
  recorded.batch_id = batch_id;
  store.decisions[batch_id] = std::move(recorded);
  batch->status = BatchStatus::Decided;
  batch->drafts = drafts;
  batch->dropped = std::move(dropped);
  return drafts;
}

IntegrationReport integrate(KnowledgeState& state, CrystalStore& store, const std::string& batch_id, Timestamp now) {
  ReviewBatch* batch = store.find(batch_id);
  if (!batch) throw Error(ErrorCode::UnknownBatch, "unknown batch " + batch_id);
  if (batch->status != BatchStatus::Decided) {
    throw Error(ErrorCode::BatchNotDecided,
                fmt::format("batch {} is {}, not decided", batch_id, batch_status_name(batch->status)));
  }
  const double before = structure(state.skills, state.config).raw;

  IntegrationReport report;
  report.batch_id = batch_id;

  std::vector<std::string> skill_order;
  std::map<std::string, std::vector<const DraftAsset*>> by_skill;
  for (const auto& d : batch->drafts) {
    if (d.target_skill.empty()) continue;
    if (!by_skill.count(d.target_skill)) skill_order.push_back(d.target_skill);
    by_skill[d.target_skill].push_back(&d);
  }

  std::set<EntryId> consolidated;
  for (const auto& name : skill_order) {
    SkillAsset* skill = state.find_skill(name);
    if (!skill) {
      SkillAsset fresh;
      fresh.name = name;
      fresh.instructions = new_skill_instructions(name);
      auto pos = std::lower_bound(state.skills.begin(), state.skills.end(), name,
                                  [](const SkillAsset& s, const std::string& n) { return s.name < n; });
      skill = &*state.skills.insert(pos, std::move(fresh));
    }
    std::set<std::string> files;
    std::vector<EntryId> ids;
    std::set<EntryId> seen;
    for (const DraftAsset* d : by_skill[name]) {
      std::string& ref = skill->references[d->reference_file];
      if (ref.empty()) {
        ref = "# " + d->reference_file.substr(0, d->reference_file.size() - 3) + "\n\n";
      } else {
        ref = text::canonical(ref) + "\n";
      }
      ref += d->section;
      files.insert(d->reference_file);
      for (const auto& id : d->support_entries) {
        if (seen.insert(id).second) ids.push_back(id);
      }
    }
    VersionRecord v;
    v.version = skill->current_version() + 1;
    v.batch_id = batch_id;
    v.timestamp = now;
    v.change_summary = fmt::format("{}: {} section(s) appended to {}", batch_id, by_skill[name].size(),
                                   text::join(std::vector<std::string>(files.begin(), files.end()), ", "));
    std::uint64_t hash = skill_content_hash(*skill);
    v.content_hash = to_hex(hash);
    skill->versions.push_back(v);
    state.write_grants.push_back({batch_id, "skills/" + name, hash});
    report.assets_written.push_back({name, v.version, v.content_hash});

    std::sort(ids.begin(), ids.end());
    for (const auto& id : ids) {
      auto it = std::lower_bound(state.experiential.entries.begin(), state.experiential.entries.end(), id,
                                 [](const ExperientialEntry& e, const EntryId& k) { return e.id < k; });
      if (it == state.experiential.entries.end() || it->id != id) continue;
      it->consolidated_into = AssetRef{name, v.version};
      consolidated.insert(id);
    }
    state.experiential.archived_groups.push_back({batch_id, ids, name, v.version});
  }

  auto& principles = state.constitutional.principles;
  for (const auto& d : batch->drafts) {
    if (!d.principle_text) continue;
    auto it = std::find_if(principles.begin(), principles.end(),
                           [&](const Principle& p) { return p.text == *d.principle_text; });
    if (it == principles.end()) {
      Principle p;
      p.id = next_principle_id(principles);
      p.text = *d.principle_text;
      p.status = PrincipleStatus::Confirmed;
      p.source_entries = d.support_entries;
      principles.push_back(std::move(p));
      report.principles_updated.push_back(principles.back().id);
    } else {
      it->status = PrincipleStatus::Confirmed;
      for (const auto& id : d.support_entries) {
        if (std::find(it->source_entries.begin(), it->source_entries.end(), id) == it->source_entries.end()) {
          it->source_entries.push_back(id);
        }
      }
      report.principles_updated.push_back(it->id);
    }
  }
  if (!report.principles_updated.empty()) {
    state.write_grants.push_back({batch_id, "MEMORY.md", fnv1a64(canonical_document(state, "MEMORY.md"))});
  }

  const double after = structure(state.skills, state.config).raw;
  report.entries_consolidated = static_cast<int>(consolidated.size());
  report.delta_structure = after - before;
  if (report.entries_consolidated > 0) report.eta = report.delta_structure / report.entries_consolidated;

  HistoryRecord h;
  h.batch_id = batch_id;
  h.integrated_at = now;
  h.assets = report.assets_written;
  h.entries_consolidated = report.entries_consolidated;
  h.delta_structure = report.delta_structure;
  h.eta = report.eta;
  h.principles_updated = report.principles_updated;
  store.history[batch_id] = std::move(h);
  batch->status = BatchStatus::Integrated;
  return report;
}

json integration_to_json(const IntegrationReport& r) {
  json assets = json::array();
  for (const auto& a : r.assets_written) assets.push_back({{"name", a.name}, {"version", a.version}, {"content_hash", a.content_hash}});
  return json{{"batch_id", r.batch_id},
              {"assets_written", assets},
              {"entries_consolidated", r.entries_consolidated},
              {"principles_updated", r.principles_updated},
              {"delta_structure", r.delta_structure},
              {"eta", r.eta ? json(*r.eta) : json(nullptr)}};
}

}  // namespace nfd
