#pragma once

/**
 * @file cli.hpp
 * @brief The `kloospow` command line: eval, average, divisor-scan, roots,
 * korobov, valuation, verify and rerun.
 *
 * Exit codes: 0 success, 1 verification failure, 2 usage error,
 * 3 resource ceiling (TooLarge).
 */

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace kloospow {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTooLarge = 3;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "3..6", "2,4,9", "2..4,7" or "" (empty list).
std::vector<std::uint64_t> parse_int_list(const std::string& text);

} // namespace kloospow
