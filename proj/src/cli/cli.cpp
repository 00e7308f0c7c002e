#include "nfd/cli/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "nfd/common/error.hpp"
#include "nfd/common/text.hpp"
#include "nfd/crystal/pipeline.hpp"
#include "nfd/crystal/triggers.hpp"
#include "nfd/gateway/server.hpp"
#include "nfd/index/search.hpp"
#include "nfd/ingest/append.hpp"
#include "nfd/ingest/migrate.hpp"
#include "nfd/ingest/transcript.hpp"
#include "nfd/metrics/metrics.hpp"
#include "nfd/model/config.hpp"
#include "nfd/session.hpp"

namespace nfd::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  std::string workspace;
  bool json = false;
  std::vector<std::string> overrides;
  std::optional<EngineConfig> persisted_config;
  std::istream* in = nullptr;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
  Timestamp now;
  std::optional<Timestamp> pinned;
};

Date parse_date_arg(const std::string& s, const char* what) {
  auto d = Date::parse(s);
  if (!d) throw UsageError(fmt::format("{} must be YYYY-MM-DD, got '{}'", what, s));
  return *d;
}

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    for (auto& part : text::split(item, ',')) {
      std::string t(text::trim(part));
      if (!t.empty()) out.push_back(std::move(t));
    }
  }
  return out;
}

Workspace open_ws(Context& ctx, LockMode mode) {
  Workspace ws = Workspace::open(ctx.workspace, mode);
  for (const auto& w : ws.warnings) {
    *ctx.err << fmt::format("warning: {}{}: {}\n", w.file, w.line > 0 ? fmt::format(":{}", w.line) : "", w.message);
  }
  if (!ctx.overrides.empty()) {
    ctx.persisted_config = ws.state.config;
    for (const auto& o : ctx.overrides) apply_config_override(ws.state.config, o);
    validate_config(ws.state.config);
  }
  return ws;
}

void commit_ws(Context& ctx, Workspace& ws) {
  EngineConfig effective = ws.state.config;
  if (ctx.persisted_config) ws.state.config = *ctx.persisted_config;
  ws.commit();
  ws.state.config = effective;
}

void emit(Context& ctx, const json& j) { *ctx.out << j.dump(2) << "\n"; }

std::string fmt_score(double v) { return fmt::format("{:.4f}", v); }

json entry_hit_json(const SearchHit& h, const ExperientialEntry* e) {
  json j{{"entry_id", h.entry_id.str()},
         {"lexical_score", h.lexical_score},
         {"decay_factor", h.decay_factor},
         {"final_score", h.final_score},
         {"snippet", h.snippet}};
  if (e) j["tags"] = e->tags;
  return j;
}

void print_batch(Context& ctx, const ReviewBatch& b) {
  auto& out = *ctx.out;
  out << fmt::format("{}  {}  created {}  {} candidate(s)\n", b.batch_id, batch_status_name(b.status),
                     b.created_at.str(), b.candidates.size());
  for (const auto& c : b.candidates) {
    std::string sig;
    for (const auto& t : c.tag_signature) sig += "[" + t + "]";
    out << fmt::format("  {:<4} {:<40} support={:<3} score={}{}  {}\n", c.id, sig, c.support_entries.size(),
                       fmt_score(c.score), c.weak ? " weak" : "", proposed_category_name(c.proposed_category));
    out << "       " << snippet_of(c.exemplar_text) << "\n";
  }
  for (const auto& d : b.drafts) {
    out << fmt::format("  draft {} -> {}{}\n", d.candidate_id,
                       d.target_skill.empty() ? std::string("principles") : d.target_skill + "/references/" + d.reference_file,
                       d.principle_text ? " (+principle)" : "");
  }
  for (const auto& d : b.dropped) out << fmt::format("  dropped {}: {}\n", d.candidate_id, d.reason);
}

std::string prompt(Context& ctx, const std::string& question) {
  *ctx.out << question << std::flush;
  std::string line;
  if (!std::getline(*ctx.in, line)) {
    throw Error(ErrorCode::InvalidArgument, "input ended before every candidate had a verdict");
  }
  return std::string(text::trim(line));
}

DecisionDocument prompt_decisions(Context& ctx, const KnowledgeState& state, const ReviewBatch& batch) {
  DecisionDocument doc;
  doc.batch_id = batch.batch_id;
  std::vector<std::string> skills;
  for (const auto& s : state.skills) skills.push_back(s.name);
  for (const auto& c : batch.candidates) {
    std::string sig;
    for (const auto& t : c.tag_signature) sig += "[" + t + "]";
    *ctx.out << fmt::format("\n{} {} support={} score={}{} ({})\n", c.id, sig, c.support_entries.size(),
                            fmt_score(c.score), c.weak ? " weak" : "", proposed_category_name(c.proposed_category));
    *ctx.out << "  " << c.exemplar_text << "\n";
    for (const auto& id : c.support_entries) {
      if (const auto* e = state.experiential.find(id)) *ctx.out << "    " << id.str() << "  " << snippet_of(e->body) << "\n";
    }
    ReviewDecision d;
    d.candidate_id = c.id;
    while (true) {
      std::string v = text::to_lower(prompt(ctx, "[a]pprove / [r]eject / [e]dit? "));
      if (v == "a" || v == "approve") {
        d.verdict = Verdict::Approve;
      } else if (v == "r" || v == "reject") {
        d.verdict = Verdict::Reject;
      } else if (v == "e" || v == "edit") {
        d.verdict = Verdict::Edit;
      } else {
        continue;
      }
      break;
    }
    if (d.verdict != Verdict::Reject) {
      if (d.verdict == Verdict::Edit) {
        std::string t;
        while (t.empty()) t = prompt(ctx, "edited text: ");
        d.edited_text = t;
      }
      std::string hint = c.proposed_category == ProposedCategory::SkillReference ? "required" : "blank for default";
      std::string target = prompt(ctx, fmt::format("target skill ({}; known: {}): ", hint, text::join(skills, ", ")));
      while (target.empty() && c.proposed_category == ProposedCategory::SkillReference) {
        target = prompt(ctx, "target skill: ");
      }
      if (!target.empty()) d.target_skill = target;
      while (true) {
        std::string sub = prompt(ctx, "generalize 'literal => placeholder' (blank to finish): ");
        if (sub.empty()) break;
        auto arrow = sub.find("=>");
        if (arrow == std::string::npos) continue;
        std::string lit(text::trim(std::string_view(sub).substr(0, arrow)));
        std::string ph(text::trim(std::string_view(sub).substr(arrow + 2)));
        if (!lit.empty()) d.generalization_notes.push_back({lit, ph});
      }
      std::string principle = prompt(ctx, "principle text (blank for none): ");
      if (!principle.empty()) d.principle_text = principle;
    }
    doc.decisions.push_back(std::move(d));
  }
  return doc;
}

json load_json_arg(const std::string& path) {
  std::string content = read_file(path);
  try {
    return json::parse(content);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, fmt::format("{}: malformed JSON: {}", path, e.what()));
  }
}

int decide(Context& ctx, const std::string& batch_id, const std::string& file, bool and_integrate) {
  Workspace ws = open_ws(ctx, LockMode::Exclusive);
  const ReviewBatch* batch = ws.crystal.find(batch_id);
  if (!batch) throw Error(ErrorCode::UnknownBatch, "unknown batch " + batch_id);
  if (batch->status != BatchStatus::Pending) {
    throw Error(ErrorCode::BatchNotPending,
                fmt::format("batch {} is {}, not pending", batch_id, batch_status_name(batch->status)));
  }
  DecisionDocument doc = file.empty() ? prompt_decisions(ctx, ws.state, *batch) : decisions_from_json(load_json_arg(file));
  apply_decisions(ws.state, ws.crystal, batch_id, doc);
  std::optional<IntegrationReport> report;
  if (and_integrate) report = integrate(ws.state, ws.crystal, batch_id, ctx.now);
  commit_ws(ctx, ws);
  const ReviewBatch& after = *ws.crystal.find(batch_id);
  if (ctx.json) {
    json j{{"batch", batch_to_json(after)}};
    j["integration"] = report ? integration_to_json(*report) : json(nullptr);
    emit(ctx, j);
  } else {
    print_batch(ctx, after);
    if (report) {
      *ctx.out << fmt::format("integrated: {} asset(s), {} entries consolidated, eta {}\n", report->assets_written.size(),
                              report->entries_consolidated, report->eta ? fmt_score(*report->eta) : "n/a");
    }
  }
  return kExitOk;
}

Timestamp resolve_now(const std::map<std::string, std::string>& env) {
  if (auto it = env.find("NFD_NOW"); it != env.end() && !it->second.empty()) {
    auto ts = Timestamp::parse(it->second);
    if (!ts) throw UsageError("NFD_NOW must be an ISO date or timestamp");
    return *ts;
  }
  return Timestamp::now();
}

}  // namespace

int run(const std::vector<std::string>& args, const std::map<std::string, std::string>& env, std::istream& in,
        std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.in = &in;
  ctx.out = &out;
  ctx.err = &err;
  if (auto it = env.find("NFD_WORKSPACE"); it != env.end()) ctx.workspace = it->second;
  if (ctx.workspace.empty()) ctx.workspace = ".";

  CLI::App app{"nfd: workspace-first knowledge engine", "nfd"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--workspace,-w", ctx.workspace, "workspace root (default $NFD_WORKSPACE or .)");
  app.add_flag("--json", ctx.json, "machine-readable JSON output");
  app.add_option("--config", ctx.overrides, "KEY=VALUE engine config override for this run");

  std::function<int()> action;

  auto* init = app.add_subcommand("init", "scaffold a new workspace");
  std::string persona;
  std::string init_dir;
  init->add_option("--persona", persona, "persona seed written into SOUL.md");
  init->add_option("dir", init_dir, "target directory (default --workspace)");
  init->callback([&] {
    action = [&] {
      fs::path root = init_dir.empty() ? fs::path(ctx.workspace) : fs::path(init_dir);
      auto state = scaffold_workspace(root, persona.empty() ? std::nullopt : std::optional<std::string>(persona));
      if (ctx.json) {
        emit(ctx, {{"workspace", root.string()}, {"documents", state.constitutional.documents.size()}});
      } else {
        out << "initialized workspace at " << root.string() << "\n";
      }
      return kExitOk;
    };
  });

  auto* log = app.add_subcommand("log", "append one experiential entry");
  std::vector<std::string> log_tags, log_ctx, log_body;
  std::string log_date, log_time;
  log->add_option("--tag,-t", log_tags, "tag(s), repeatable or comma-separated");
  log->add_option("--date", log_date, "log date (default today)");
  log->add_option("--time", log_time, "HH:MM");
  log->add_option("--ctx", log_ctx, "context key=value, repeatable");
  log->add_option("body", log_body, "entry text ('-' reads stdin)")->required();
  log->callback([&] {
    action = [&] {
      NewEntry req;
      req.date = log_date.empty() ? ctx.now.date() : parse_date_arg(log_date, "--date");
      req.tags = split_list(log_tags);
      if (!log_time.empty()) {
        auto t = TimeOfDay::parse(log_time);
        if (!t) throw UsageError("--time must be HH:MM");
        req.timestamp = t;
      }
      for (const auto& kv : log_ctx) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--ctx must be key=value");
        req.context[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      if (log_body.size() == 1 && log_body[0] == "-") {
        req.body = std::string(std::istreambuf_iterator<char>(in), {});
      } else {
        req.body = text::join(log_body, " ");
      }
      Workspace ws = open_ws(ctx, LockMode::Exclusive);
      EntryId id = append_entry(ws.state, req, ws.lexicon, &ws.index);
      commit_ws(ctx, ws);
      const auto* e = ws.state.experiential.find(id);
      if (ctx.json) {
        emit(ctx, {{"entry_id", id.str()}, {"tags", e->tags}, {"category", std::string(category_name(e->category))}});
      } else {
        out << id.str() << "\n";
      }
      return kExitOk;
    };
  });

  auto* ingest = app.add_subcommand("ingest", "extract entries from JSONL interaction transcripts");
  std::vector<std::string> transcripts;
  ingest->add_option("files", transcripts, "transcript files ('-' reads stdin)")->required();
  ingest->callback([&] {
    action = [&] {
      Workspace ws = open_ws(ctx, LockMode::Exclusive);
      json results = json::array();
      for (const auto& f : transcripts) {
        std::string content = f == "-" ? std::string(std::istreambuf_iterator<char>(in), {}) : read_file(f);
        auto t = parse_transcript(content, f);
        auto ids = ingest_transcript(ws.state, t, ws.lexicon, &ws.index);
        json id_list = json::array();
        for (const auto& id : ids) id_list.push_back(id.str());
        results.push_back({{"file", f}, {"session_id", t.session_id}, {"entries", id_list}});
      }
      commit_ws(ctx, ws);
      if (ctx.json) {
        emit(ctx, results);
      } else {
        for (const auto& r : results) {
          out << fmt::format("{}: {} entr{} from session {}\n", r["file"].get<std::string>(), r["entries"].size(),
                             r["entries"].size() == 1 ? "y" : "ies", r["session_id"].get<std::string>());
        }
      }
      return kExitOk;
    };
  });

  auto* migrate = app.add_subcommand("migrate", "import historical notes as entries");
  std::string migrate_source, date_source = "auto";
  migrate->add_option("source", migrate_source, "directory of .md/.txt notes")->required();
  migrate->add_option("--date-source", date_source, "filename | mtime | auto");
  migrate->callback([&] {
    action = [&] {
      auto src = parse_date_source(date_source);
      if (!src) throw UsageError("--date-source must be filename, mtime or auto");
      Workspace ws = open_ws(ctx, LockMode::Exclusive);
      auto report = migrate_corpus(ws.state, ws.index, migrate_source, DateMapper{*src}, ws.lexicon);
      commit_ws(ctx, ws);
      if (ctx.json) {
        emit(ctx, {{"entries_added", report.entries_added},
                   {"files_processed", report.files_processed},
                   {"warnings", report.warnings}});
      } else {
        out << fmt::format("{} entries added from {} file(s)\n", report.entries_added, report.files_processed);
        for (const auto& w : report.warnings) err << "warning: " << w << "\n";
      }
      return kExitOk;
    };
  });

  auto* search_cmd = app.add_subcommand("search", "decay-weighted search over the experiential layer");
  std::vector<std::string> query_words, s_tags, s_exclude;
  std::string s_from, s_to, s_as_of;
  int s_limit = 10;
  search_cmd->add_option("query", query_words, "query text");
  search_cmd->add_option("--tags", s_tags, "required tags");
  search_cmd->add_option("--exclude", s_exclude, "excluded tags");
  search_cmd->add_option("--from", s_from, "earliest date");
  search_cmd->add_option("--to", s_to, "latest date");
  search_cmd->add_option("--limit", s_limit, "maximum hits");
  search_cmd->add_option("--as-of", s_as_of, "reference date for decay (default today)");
  search_cmd->callback([&] {
    action = [&] {
      SearchQuery q;
      q.text = text::join(query_words, " ");
      for (auto& t : split_list(s_tags)) q.required_tags.insert(t);
      for (auto& t : split_list(s_exclude)) q.excluded_tags.insert(t);
      if (!s_from.empty()) q.from = parse_date_arg(s_from, "--from");
      if (!s_to.empty()) q.to = parse_date_arg(s_to, "--to");
      if (s_limit < 1) throw UsageError("--limit must be at least 1");
      q.limit = s_limit;
      q.as_of = s_as_of.empty() ? ctx.now.date() : parse_date_arg(s_as_of, "--as-of");
      Workspace ws = open_ws(ctx, LockMode::Shared);
      q.decay_lambda = ws.state.config.decay_lambda;
      auto hits = search(ws.index, ws.state.experiential, q);
      if (ctx.json) {
        json arr = json::array();
        for (const auto& h : hits) arr.push_back(entry_hit_json(h, ws.state.experiential.find(h.entry_id)));
        emit(ctx, arr);
      } else {
        for (const auto& h : hits) {
          out << fmt::format("{}  {}  {}\n", h.entry_id.str(), fmt_score(h.final_score), h.snippet);
        }
      }
      return kExitOk;
    };
  });

  auto* crystallize = app.add_subcommand("crystallize", "crystallization checkpoints");
  crystallize->require_subcommand(1);
  auto* open_cmd = crystallize->add_subcommand("open", "open a review batch for a scope");
  std::vector<std::string> o_tags, o_categories;
  std::string o_from, o_to;
  int o_max = 0;
  bool o_all = false, o_include = false;
  open_cmd->add_option("--tags", o_tags, "required tags");
  open_cmd->add_option("--category", o_categories, "categories (e.g. ErrorRecord)");
  open_cmd->add_option("--from", o_from, "earliest date");
  open_cmd->add_option("--to", o_to, "latest date");
  open_cmd->add_option("--max", o_max, "maximum number of entries");
  open_cmd->add_flag("--all", o_all, "scope over every entry");
  open_cmd->add_flag("--include-consolidated", o_include, "also consider consolidated entries");
  open_cmd->callback([&] {
    action = [&] {
      Scope scope;
      scope.required_tags = split_list(o_tags);
      for (const auto& c : split_list(o_categories)) {
        auto cat = parse_category(c);
        if (!cat) throw UsageError("unknown category " + c);
        scope.categories.push_back(*cat);
      }
      if (!o_from.empty()) scope.from = parse_date_arg(o_from, "--from");
      if (!o_to.empty()) scope.to = parse_date_arg(o_to, "--to");
      if (o_max > 0) scope.max_entries = o_max;
      scope.all = o_all;
      scope.include_consolidated = o_include;
      Workspace ws = open_ws(ctx, LockMode::Exclusive);
      ReviewBatch batch = open_batch(ws.state, ws.crystal, scope, ctx.now);
      commit_ws(ctx, ws);
      if (ctx.json) {
        emit(ctx, batch_to_json(batch));
      } else {
        print_batch(ctx, batch);
      }
      return kExitOk;
    };
  });

  auto* decide_cmd = crystallize->add_subcommand("decide", "record review decisions for a pending batch");
  std::string d_batch, d_file;
  bool d_integrate = false;
  decide_cmd->add_option("batch", d_batch, "batch id")->required();
  decide_cmd->add_option("--file", d_file, "decision document (omit for interactive prompts)");
  decide_cmd->add_flag("--integrate", d_integrate, "integrate right after deciding");
  decide_cmd->callback([&] { action = [&] { return decide(ctx, d_batch, d_file, d_integrate); }; });

  auto* integrate_cmd = crystallize->add_subcommand("integrate", "write a decided batch into the skill layer");
  std::string i_batch;
  integrate_cmd->add_option("batch", i_batch, "batch id")->required();
  integrate_cmd->callback([&] {
    action = [&] {
      Workspace ws = open_ws(ctx, LockMode::Exclusive);
      auto report = integrate(ws.state, ws.crystal, i_batch, ctx.now);
      commit_ws(ctx, ws);
      if (ctx.json) {
        emit(ctx, integration_to_json(report));
      } else {
        for (const auto& a : report.assets_written) out << fmt::format("{} v{} {}\n", a.name, a.version, a.content_hash);
        for (const auto& p : report.principles_updated) out << "principle " << p << " confirmed\n";
        out << fmt::format("{} entries consolidated, delta structure {}, eta {}\n", report.entries_consolidated,
                           fmt_score(report.delta_structure), report.eta ? fmt_score(*report.eta) : "n/a");
      }
      return kExitOk;
    };
  });

  auto* review = app.add_subcommand("review", "list pending batches or review one interactively");
  std::string r_batch;
  bool r_integrate = false;
  review->add_option("batch", r_batch, "batch to review");
  review->add_flag("--integrate", r_integrate, "integrate right after deciding");
  review->callback([&] {
    action = [&] {
      if (!r_batch.empty()) return decide(ctx, r_batch, "", r_integrate);
      Workspace ws = open_ws(ctx, LockMode::Shared);
      json arr = json::array();
      for (const auto& [id, b] : ws.crystal.batches) {
        if (b.status != BatchStatus::Pending) continue;
        if (ctx.json) {
          arr.push_back(batch_to_json(b));
        } else {
          print_batch(ctx, b);
        }
      }
      if (ctx.json) emit(ctx, arr);
      return kExitOk;
    };
  });

  auto* metrics_cmd = app.add_subcommand("metrics", "value breakdown and crystallization efficiency");
  bool csv = false;
  metrics_cmd->add_flag("--csv", csv, "one CSV row per integrated batch");
  metrics_cmd->callback([&] {
    action = [&] {
      Workspace ws = open_ws(ctx, LockMode::Shared);
      auto history = ws.crystal.history_in_order();
      if (csv) {
        out << "batch_id,integrated_at,entries_consolidated,delta_structure,eta\n";
        for (const auto& h : history) {
          out << fmt::format("{},{},{},{},{}\n", h.batch_id, h.integrated_at.str(), h.entries_consolidated,
                             json(h.delta_structure).dump(), h.eta ? json(*h.eta).dump() : "");
        }
        return kExitOk;
      }
      auto v = value(ws.state);
      if (ctx.json) {
        json j = value_to_json(v);
        json etas = json::array();
        for (const auto& h : history) {
          etas.push_back({{"batch_id", h.batch_id}, {"eta", h.eta ? json(*h.eta) : json(nullptr)}});
        }
        j["eta_history"] = etas;
        emit(ctx, j);
      } else {
        out << fmt::format("breadth    {}\nstructure  {} (raw {})\nalign      {}\nvalue      {}\n", fmt_score(v.breadth),
                           fmt_score(v.structure_norm), fmt_score(v.structure_raw), fmt_score(v.align), fmt_score(v.value));
        for (const auto& h : history) {
          out << fmt::format("eta {}  {}\n", h.batch_id, h.eta ? fmt_score(*h.eta) : "n/a");
        }
      }
      return kExitOk;
    };
  });

  auto* report_cmd = app.add_subcommand("report", "progression report for a date window");
  std::string rep_from, rep_to, rep_ratings;
  report_cmd->add_option("--from", rep_from, "window start (default first entry)");
  report_cmd->add_option("--to", rep_to, "window end (default today)");
  report_cmd->add_option("--ratings", rep_ratings, "JSON ratings file");
  report_cmd->callback([&] {
    action = [&] {
      Workspace ws = open_ws(ctx, LockMode::Shared);
      const auto& entries = ws.state.experiential.entries;
      DateWindow window;
      window.from = !rep_from.empty() ? parse_date_arg(rep_from, "--from")
                                      : (entries.empty() ? ctx.now.date() : entries.front().id.date);
      window.to = !rep_to.empty() ? parse_date_arg(rep_to, "--to") : ctx.now.date();
      std::optional<std::vector<Rating>> ratings;
      if (!rep_ratings.empty()) ratings = ratings_from_json(load_json_arg(rep_ratings));
      auto r = progression_report(ws.state, window, ratings);
      if (ctx.json) {
        emit(ctx, report_to_json(r));
      } else {
        out << fmt::format("window               {} .. {}\n", r.window.from.str(), r.window.to.str());
        out << fmt::format("useful analyses      {}\n",
                           r.useful_analyses_pct ? fmt::format("{:.1f}%", *r.useful_analyses_pct) : "n/a");
        out << fmt::format("case recalls         {}\n", r.case_recalls);
        out << fmt::format("bias flags           {}\n", r.bias_flags);
        out << fmt::format("skill refs populated {}\n", r.skill_refs_populated);
        out << fmt::format("error patterns       {}\n", r.error_patterns);
        out << fmt::format("daily log entries    {}\n", r.daily_log_entries);
      }
      return kExitOk;
    };
  });

  auto* triggers = app.add_subcommand("triggers", "check crystallization triggers");
  triggers->callback([&] {
    action = [&] {
      Workspace ws = open_ws(ctx, LockMode::Shared);
      auto firings = check_triggers(ws.state, ws.crystal, ctx.now);
      if (ctx.json) {
        emit(ctx, firings_to_json(firings));
      } else if (firings.empty()) {
        out << "no triggers fired\n";
      } else {
        for (const auto& f : firings) out << trigger_mode_name(f.mode) << ": " << f.detail << "\n";
      }
      return kExitOk;
    };
  });

  auto* serve_cmd = app.add_subcommand("serve", "serve the review API over HTTP");
  std::string bind = "127.0.0.1";
  int port = 8420;
  serve_cmd->add_option("--bind", bind, "listen address");
  serve_cmd->add_option("--port", port, "listen port");
  serve_cmd->callback([&] {
    action = [&] {
      if (!fs::is_regular_file(fs::path(ctx.workspace) / kConfigFile)) {
        throw Error(ErrorCode::NotAWorkspace, ctx.workspace + " has no " + kConfigFile);
      }
      err << fmt::format("serving {} on http://{}:{}\n", ctx.workspace, bind, port);
      auto pinned = ctx.pinned;
      gateway::serve(ctx.workspace, bind, port, [pinned] { return pinned ? *pinned : Timestamp::now(); });
      return kExitOk;
    };
  });

  auto* phase = app.add_subcommand("phase", "show or set the lifecycle phase");
  std::string phase_name_arg;
  phase->add_option("name", phase_name_arg, "Bootstrap | InitialNurturing | StructuredNurturing | Mature");
  phase->callback([&] {
    action = [&] {
      if (phase_name_arg.empty()) {
        Workspace ws = open_ws(ctx, LockMode::Shared);
        out << phase_name(ws.state.lifecycle_phase) << "\n";
        return kExitOk;
      }
      auto p = parse_phase(phase_name_arg);
      if (!p) throw UsageError("unknown phase " + phase_name_arg);
      Workspace ws = open_ws(ctx, LockMode::Exclusive);
      ws.state.lifecycle_phase = *p;
      commit_ws(ctx, ws);
      out << phase_name(*p) << "\n";
      return kExitOk;
    };
  });

  auto* reindex = app.add_subcommand("reindex", "rebuild the retrieval index from the logs");
  reindex->callback([&] {
    action = [&] {
      Workspace ws = open_ws(ctx, LockMode::Exclusive);
      ws.index = rebuild_index(ws.state.experiential);
      commit_ws(ctx, ws);
      if (ctx.json) {
        emit(ctx, {{"doc_count", ws.index.doc_count()}, {"terms", ws.index.postings.size()}});
      } else {
        out << fmt::format("indexed {} entries, {} terms\n", ws.index.doc_count(), ws.index.postings.size());
      }
      return kExitOk;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    ctx.now = resolve_now(env);
    if (auto it = env.find("NFD_NOW"); it != env.end() && !it->second.empty()) ctx.pinned = ctx.now;
    if (!action) {
      err << app.help();
      return kExitUsage;
    }
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
}

}  // namespace nfd::cli
