#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace setqm::cli {

inline constexpr const char* kSchemaVersion = "1";

// Runs one command line (without the program name). Returns the exit code:
// 0 on success, 1 for domain errors, 2 for malformed input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace setqm::cli
