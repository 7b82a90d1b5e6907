#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ruinlab::cli {

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // a deterministic verify check failed
inline constexpr int kExitUsage = 2;        // bad flags or a domain error
inline constexpr int kExitIo = 3;

// Runs one invocation. args excludes the program name. Reports go to the
// --out file when given, otherwise to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "2:6" -> 2..6, "2:40:2" -> 2,4,..,40, "5,10,20" -> list; items may mix.
std::vector<std::int64_t> parse_int_list(const std::string& text);

}  // namespace ruinlab::cli
