#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpesr::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kConfigError = 3;
inline constexpr int kFormatError = 4;

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpesr::cli
