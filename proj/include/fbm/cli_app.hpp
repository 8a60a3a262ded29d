#pragma once

#include <string>
#include <vector>

namespace fbm::cli {

// Parses and dispatches one invocation. Exit codes: 0 ok, 2 validation
// error, 3 numerical fault, 4 I/O failure.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args without program name

}  // namespace fbm::cli
