#pragma once

// Command-line front end. run_cli is the whole program minus main(), so tests
// can drive it with captured streams.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyp32/numerics.hpp"

namespace hyp32 {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailures = 1;  // verify found failures, or slow_convergence
inline constexpr int kExitNearSingular = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitUsage = 64;

int exit_code(Status s);

/// Parses "re" or "re,im".
std::optional<Cx> parse_complex(const std::string& text);

/// Parses "lo:hi" with lo <= hi.
std::optional<std::pair<int, int>> parse_range(const std::string& text);

/// Quotes a field per RFC 4180 when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyp32
