#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace nfd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `nfd` invocation. `args` excludes the program name. `env`
/// supplies NFD_WORKSPACE and NFD_NOW (an ISO timestamp pinning the clock).
int run(const std::vector<std::string>& args, const std::map<std::string, std::string>& env, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace nfd::cli
