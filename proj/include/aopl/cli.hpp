#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aopl {

// Exit codes.
inline constexpr int kExitClean = 0;
inline constexpr int kExitIssues = 1;
inline constexpr int kExitUsage = 2;

// Entry point of aopl-lint, with streams injected for testing.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Splits `a(x,y),b(z)` at top-level commas.
std::vector<std::string> split_top_level(const std::string& text);

}  // namespace aopl
