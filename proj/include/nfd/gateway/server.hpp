#pragma once

#include <functional>
#include <map>
#include <string>

#include <json.hpp>

#include "nfd/common/date.hpp"
#include "nfd/common/fs.hpp"

namespace nfd::gateway {

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> params;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

using Clock = std::function<Timestamp()>;

/// Routes one request against the workspace at `root`. Each call opens the
/// workspace (shared for reads, exclusive for the decisions POST), so a
/// concurrent CLI writer surfaces as 423.
///
///   GET  /api/batches?status=pending
///   GET  /api/batches/{id}
///   POST /api/batches/{id}/decisions[?integrate=true]
///   GET  /api/metrics
///   GET  /api/entries?q=&tags=&exclude=&limit=&as_of=
///   GET  /api/skills/{name}
///   GET  /api/history
///
/// Non-2xx bodies are `{status, code, message}`.
ApiResponse dispatch(const fs::path& root, const ApiRequest& request, const Clock& clock);

/// Blocks serving HTTP until the process is stopped. Throws IoFailure when
/// the address cannot be bound.
void serve(const fs::path& root, const std::string& host, int port, Clock clock);

}  // namespace nfd::gateway
