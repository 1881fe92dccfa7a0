#pragma once
// Command-line front end: `secrelay <compute|sweep|montecarlo|verify> [flags]`.
//
// Exit codes: 0 success, 1 usage/config error, 2 verification failure.

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include "secrelay/channel_model.hpp"

namespace secrelay::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Parses argv (argv[0] is the program name) and runs one command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Shortest decimal text that round-trips to the same double; never
/// locale-dependent.
std::string format_double(double v);

/// "re,im" or "re" -> complex. Throws InvalidInput on malformed text.
Complex parse_complex(std::string_view text);

/// Flat key=value lines; '#' starts a comment, blank lines ignored, keys and
/// values trimmed. Throws ConfigError on a line without '=' or a repeated key.
std::map<std::string, std::string> parse_key_values(std::istream& in);

}  // namespace secrelay::cli
