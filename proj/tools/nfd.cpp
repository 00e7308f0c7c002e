#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "nfd/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::map<std::string, std::string> env;
  for (const char* key : {"NFD_WORKSPACE", "NFD_NOW"}) {
    if (const char* v = std::getenv(key)) env[key] = v;
  }
  return nfd::cli::run(args, env, std::cin, std::cout, std::cerr);
}
