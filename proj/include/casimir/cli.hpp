#pragma once

#include <ostream>

namespace casimir::cli {

// Entry point of the `wedge-casimir` tool. Returns the process exit code:
// 0 success, 1 validation failure, 2 bad input or runtime error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
