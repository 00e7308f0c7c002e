#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nfd/model/types.hpp"

namespace nfd {

/// Throws InvalidConfig naming the first violated constraint.
void validate_config(const EngineConfig& config);

/// Applies one `KEY=VALUE` override. Throws InvalidConfig for unknown keys or
/// unparsable values; does not validate cross-field constraints.
void apply_config_override(EngineConfig& config, std::string_view assignment);

/// nfd.json document: the engine config plus lifecycle metadata.
nlohmann::json workspace_config_to_json(const EngineConfig& config, LifecyclePhase phase);
void workspace_config_from_json(const nlohmann::json& j, EngineConfig& config, LifecyclePhase& phase,
                                std::vector<std::string>& warnings);

/// Canonical JSON text: two-space indent, sorted keys, trailing newline.
std::string dump_canonical(const nlohmann::json& j);

}  // namespace nfd
