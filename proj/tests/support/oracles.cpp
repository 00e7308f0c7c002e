#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace nfd::testing {

namespace fs = std::filesystem;

namespace {

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, double> counts(std::string_view text) {
  std::map<std::string, double> tf;
  for (const auto& t : oracle_tokens(text)) tf[t] += 1;
  return tf;
}

constexpr const char* kStub = "_Conditions not yet specified._";

}  // namespace

std::vector<std::string> oracle_tokens(std::string_view text) {
  std::string lower(text);
  for (auto& ch : lower) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  static const std::regex word("[a-z0-9]+");
  std::vector<std::string> out;
  for (auto it = std::sregex_iterator(lower.begin(), lower.end(), word); it != std::sregex_iterator(); ++it) {
    if (it->length() >= 2) out.push_back(it->str());
  }
  return out;
}

double oracle_cosine(std::string_view a, std::string_view b) {
  auto ta = counts(a);
  auto tb = counts(b);
  double dot = 0, na = 0, nb = 0;
  for (const auto& [t, c] : ta) {
    na += c * c;
    if (auto it = tb.find(t); it != tb.end()) dot += c * it->second;
  }
  for (const auto& [t, c] : tb) nb += c * c;
  if (na == 0 || nb == 0) return 0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double naive_bm25(const std::vector<OracleDoc>& docs, std::size_t index, std::string_view query) {
  const double k1 = 1.2, b = 0.75;
  double n_docs = static_cast<double>(docs.size());
  double total = 0;
  std::vector<std::vector<std::string>> toks;
  for (const auto& d : docs) {
    toks.push_back(oracle_tokens(d.body));
    total += static_cast<double>(toks.back().size());
  }
  double avgdl = total / n_docs;
  auto q = oracle_tokens(query);
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  double score = 0;
  const auto& doc = toks[index];
  double dl = static_cast<double>(doc.size());
  for (const auto& term : q) {
    double df = 0;
    for (const auto& t : toks) df += std::count(t.begin(), t.end(), term) > 0 ? 1 : 0;
    double tf = static_cast<double>(std::count(doc.begin(), doc.end(), term));
    if (tf == 0) continue;
    double idf = std::log(1 + (n_docs - df + 0.5) / (df + 0.5));
    score += idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * dl / avgdl));
  }
  return score;
}

std::vector<OracleCandidate> exhaustive_candidates(const std::vector<OracleDoc>& docs, double threshold,
                                                   int min_support) {
  std::map<std::vector<std::string>, std::vector<const OracleDoc*>> groups;
  for (const auto& d : docs) {
    std::vector<std::string> sig = d.tags;
    std::sort(sig.begin(), sig.end());
    sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    groups[sig].push_back(&d);
  }
  std::vector<OracleCandidate> out;
  for (const auto& [sig, members] : groups) {
    int n = static_cast<int>(members.size());
    std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) sim[i][j] = oracle_cosine(members[i]->body, members[j]->body);
    }
    auto adjacent = [&](int i, int j) { return i != j && sim[i][j] >= threshold; };
    bool any = false;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      if (std::popcount(mask) < min_support) continue;
      // connected
      int first = std::countr_zero(mask);
      unsigned seen = 1u << first, frontier = seen;
      while (frontier) {
        unsigned next = 0;
        for (int i = 0; i < n; ++i) {
          if (!(frontier >> i & 1)) continue;
          for (int j = 0; j < n; ++j) {
            if ((mask >> j & 1) && !(seen >> j & 1) && adjacent(i, j)) next |= 1u << j;
          }
        }
        seen |= next;
        frontier = next;
      }
      if (seen != mask) continue;
      // maximal
      bool maximal = true;
      for (int j = 0; j < n && maximal; ++j) {
        if (mask >> j & 1) continue;
        for (int i = 0; i < n; ++i) {
          if ((mask >> i & 1) && adjacent(i, j)) {
            maximal = false;
            break;
          }
        }
      }
      if (!maximal) continue;
      OracleCandidate c;
      c.signature = sig;
      double sum = 0;
      int pairs = 0;
      for (int i = 0; i < n; ++i) {
        if (!(mask >> i & 1)) continue;
        c.support.push_back(members[i]->id);
        for (int j = i + 1; j < n; ++j) {
          if (mask >> j & 1) {
            sum += sim[i][j];
            ++pairs;
          }
        }
      }
      std::sort(c.support.begin(), c.support.end());
      c.score = static_cast<double>(c.support.size()) * (pairs ? sum / pairs : 1.0);
      out.push_back(c);
      any = true;
    }
    if (!any && n >= min_support) {
      double sum = 0;
      int pairs = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          sum += sim[i][j];
          ++pairs;
        }
      }
      double mean = pairs ? sum / pairs : 1.0;
      if (mean < threshold) {
        OracleCandidate c;
        c.signature = sig;
        for (const auto* m : members) c.support.push_back(m->id);
        std::sort(c.support.begin(), c.support.end());
        c.score = n * threshold / 2;
        c.weak = true;
        out.push_back(c);
      }
    }
  }
  return out;
}

std::vector<ScannedEntry> scan_logs(const fs::path& root) {
  static const std::regex log_name(R"(\d{4}-\d{2}-\d{2}\.md)");
  static const std::regex entry_line(R"(^- (?:\d{2}:\d{2} )?((?:\[[A-Z][A-Z0-9-]*\])+))");
  static const std::regex tag(R"(\[([A-Z][A-Z0-9-]*)\])");
  std::vector<ScannedEntry> out;
  if (!fs::exists(root / "memory")) return out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(root / "memory")) {
    if (e.is_regular_file() && std::regex_match(e.path().filename().string(), log_name)) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    for (const auto& line : split_lines(read_all(f))) {
      std::smatch m;
      if (!std::regex_search(line, m, entry_line)) continue;
      ScannedEntry e;
      e.date = f.stem().string();
      std::string tags = m[1].str();
      for (auto it = std::sregex_iterator(tags.begin(), tags.end(), tag); it != std::sregex_iterator(); ++it) {
        e.tags.push_back((*it)[1].str());
      }
      out.push_back(e);
    }
  }
  return out;
}

std::vector<ScannedSection> scan_sections(const fs::path& root, int min_support) {
  static const std::regex marker(R"(^\s*<!-- nfd:section (.*) -->\s*$)");
  static const std::regex prov(R"(^- \d{4}-\d{2}-\d{2}#\d{4})");
  std::vector<fs::path> files;
  if (fs::exists(root / "skills")) {
    for (const auto& e : fs::recursive_directory_iterator(root / "skills")) {
      if (!e.is_regular_file() || e.path().extension() != ".md") continue;
      if (e.path().parent_path().filename() != "references") continue;
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ScannedSection> out;
  for (const auto& f : files) {
    ScannedSection* cur = nullptr;
    std::string sub;
    for (const auto& line : split_lines(read_all(f))) {
      if (line.rfind("## ", 0) == 0) {
        out.push_back({});
        cur = &out.back();
        cur->file = fs::relative(f, root).generic_string();
        sub.clear();
        continue;
      }
      if (!cur) continue;
      if (line.rfind("### ", 0) == 0) {
        sub = trim(line.substr(4));
        std::transform(sub.begin(), sub.end(), sub.begin(), [](unsigned char c) { return std::tolower(c); });
        continue;
      }
      std::smatch m;
      if (std::regex_match(line, m, marker)) {
        std::istringstream kv(m[1].str());
        for (std::string pair; kv >> pair;) {
          auto eq = pair.find('=');
          if (eq == std::string::npos) continue;
          std::string k = pair.substr(0, eq), v = pair.substr(eq + 1);
          if (k == "validated") cur->validated = v == "true";
          if (k == "kind") cur->kind = v;
        }
        continue;
      }
      std::string t = trim(line);
      if (t.empty()) continue;
      if (t != kStub) cur->populated = true;
      if (sub == "conditions" && t != kStub) cur->conditions = true;
      if (sub == "examples" && line.rfind("- ", 0) == 0) cur->examples = true;
      if (sub == "provenance" && std::regex_search(line, prov)) ++cur->provenance;
    }
  }
  for (auto& s : out) {
    s.q = 0.4 * s.validated + 0.2 * s.examples + 0.2 * (s.provenance >= min_support) + 0.2 * s.conditions;
  }
  return out;
}

double scan_structure_raw(const fs::path& root, int min_support) {
  double raw = 0;
  for (const auto& s : scan_sections(root, min_support)) raw += s.q;
  return raw;
}

std::multiset<std::string> scan_consolidated(const fs::path& root) {
  std::multiset<std::string> ids;
  fs::path p = root / "memory" / "consolidation.json";
  if (!fs::exists(p)) return ids;
  auto j = nlohmann::json::parse(read_all(p));
  for (const auto& rec : j.at("records")) {
    for (const auto& id : rec.at("entry_ids")) ids.insert(id.get<std::string>());
  }
  return ids;
}

ScannedReport scan_report(const fs::path& root, const std::string& from, const std::string& to, int min_support) {
  ScannedReport r;
  for (const auto& e : scan_logs(root)) {
    if (e.date < from || e.date > to) continue;
    ++r.daily_log_entries;
    if (std::find(e.tags.begin(), e.tags.end(), "RECALL") != e.tags.end()) ++r.case_recalls;
    if (std::find(e.tags.begin(), e.tags.end(), "BIAS-FLAG") != e.tags.end()) ++r.bias_flags;
  }
  std::set<std::string> populated;
  for (const auto& s : scan_sections(root, min_support)) {
    if (s.populated) populated.insert(s.file);
    if (s.validated && s.kind == "ErrorPattern") ++r.error_patterns;
  }
  r.skill_refs_populated = static_cast<int>(populated.size());
  return r;
}

}  // namespace nfd::testing
