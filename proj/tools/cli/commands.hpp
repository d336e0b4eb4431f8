#pragma once

#include <iosfwd>

namespace bcr::cli {

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitFailure = 2;
inline constexpr int kExitUsage = 64;

// Entry point of the bcregions tool. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bcr::cli
