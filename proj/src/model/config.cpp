#include "nfd/model/config.hpp"

#include <cmath>

#include <fmt/format.h>

#include "nfd/common/error.hpp"
#include "nfd/common/text.hpp"
#include "nfd/crystal/triggers.hpp"

namespace nfd {

namespace {

constexpr int kFormatVersion = 1;

void require(bool ok, std::string_view what) {
  if (!ok) throw Error(ErrorCode::InvalidConfig, fmt::format("invalid config: {}", what));
}

double parse_double(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    double v = std::stod(std::string(value), &used);
    if (used == value.size()) return v;
  } catch (...) {
  }
  throw Error(ErrorCode::InvalidConfig, fmt::format("{} expects a number, got '{}'", key, value));
}

int parse_int(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    int v = std::stoi(std::string(value), &used);
    if (used == value.size()) return v;
  } catch (...) {
  }
  throw Error(ErrorCode::InvalidConfig, fmt::format("{} expects an integer, got '{}'", key, value));
}

}  // namespace

void validate_config(const EngineConfig& c) {
  require(c.alpha >= 0 && c.beta >= 0 && c.gamma >= 0, "weights must be non-negative");
  require(std::abs(c.alpha + c.beta + c.gamma - 1.0) <= 1e-9, "alpha+beta+gamma must equal 1");
  require(c.constitutional_budget_tokens > 0, "constitutional_budget_tokens must be positive");
  require(c.min_support >= 1, "min_support must be at least 1");
  require(c.similarity_threshold >= 0 && c.similarity_threshold <= 1, "similarity_threshold must be in [0,1]");
  require(c.decay_lambda >= 0, "decay_lambda must be non-negative");
  require(c.n_sat > 0, "n_sat must be positive");
  require(c.s_sat > 0, "s_sat must be positive");
  require(c.threshold_trigger >= 0, "threshold_trigger must be non-negative");
  require(!c.schedule.empty(), "schedule must not be empty");
  parse_schedule(c.schedule);
}

void apply_config_override(EngineConfig& c, std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("override '{}' is not KEY=VALUE", assignment));
  }
  std::string key(text::trim(assignment.substr(0, eq)));
  std::string_view value = text::trim(assignment.substr(eq + 1));
  if (key == "alpha") c.alpha = parse_double(key, value);
  else if (key == "beta") c.beta = parse_double(key, value);
  else if (key == "gamma") c.gamma = parse_double(key, value);
  else if (key == "constitutional_budget_tokens") c.constitutional_budget_tokens = parse_int(key, value);
  else if (key == "min_support") c.min_support = parse_int(key, value);
  else if (key == "similarity_threshold") c.similarity_threshold = parse_double(key, value);
  else if (key == "decay_lambda") c.decay_lambda = parse_double(key, value);
  else if (key == "n_sat") c.n_sat = parse_int(key, value);
  else if (key == "s_sat") c.s_sat = parse_int(key, value);
  else if (key == "threshold_trigger") c.threshold_trigger = parse_int(key, value);
  else if (key == "schedule") c.schedule = std::string(value);
  else throw Error(ErrorCode::InvalidConfig, fmt::format("unknown config key '{}'", key));
}

nlohmann::json workspace_config_to_json(const EngineConfig& c, LifecyclePhase phase) {
  nlohmann::json j;
  j["format"] = kFormatVersion;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["gamma"] = c.gamma;
  j["constitutional_budget_tokens"] = c.constitutional_budget_tokens;
  j["min_support"] = c.min_support;
  j["similarity_threshold"] = c.similarity_threshold;
  j["decay_lambda"] = c.decay_lambda;
  j["n_sat"] = c.n_sat;
  j["s_sat"] = c.s_sat;
  j["threshold_trigger"] = c.threshold_trigger;
  j["schedule"] = c.schedule;
  j["lifecycle_phase"] = std::string(phase_name(phase));
  return j;
}

void workspace_config_from_json(const nlohmann::json& j, EngineConfig& c, LifecyclePhase& phase,
                                std::vector<std::string>& warnings) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "nfd.json must hold a JSON object");
  auto num = [&](const char* key, double& out) {
    if (j.contains(key)) {
      if (!j[key].is_number()) throw Error(ErrorCode::InvalidConfig, fmt::format("{} must be a number", key));
      out = j[key].get<double>();
    }
  };
  auto integer = [&](const char* key, int& out) {
    if (j.contains(key)) {
      if (!j[key].is_number_integer()) {
        throw Error(ErrorCode::InvalidConfig, fmt::format("{} must be an integer", key));
      }
      out = j[key].get<int>();
    }
  };
  num("alpha", c.alpha);
  num("beta", c.beta);
  num("gamma", c.gamma);
  integer("constitutional_budget_tokens", c.constitutional_budget_tokens);
  integer("min_support", c.min_support);
  num("similarity_threshold", c.similarity_threshold);
  num("decay_lambda", c.decay_lambda);
  integer("n_sat", c.n_sat);
  integer("s_sat", c.s_sat);
  integer("threshold_trigger", c.threshold_trigger);
  if (j.contains("schedule") && j["schedule"].is_string()) c.schedule = j["schedule"].get<std::string>();
  if (j.contains("lifecycle_phase")) {
    auto p = j["lifecycle_phase"].is_string() ? parse_phase(j["lifecycle_phase"].get<std::string>()) : std::nullopt;
    if (!p) throw Error(ErrorCode::InvalidConfig, "lifecycle_phase is not a known phase");
    phase = *p;
  }
  static const std::vector<std::string> known = {
      "format", "alpha", "beta", "gamma", "constitutional_budget_tokens", "min_support", "similarity_threshold",
      "decay_lambda", "n_sat", "s_sat", "threshold_trigger", "schedule", "lifecycle_phase"};
  for (const auto& item : j.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      warnings.push_back(fmt::format("unknown key '{}' ignored", item.key()));
    }
  }
  validate_config(c);
}

std::string dump_canonical(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace nfd
