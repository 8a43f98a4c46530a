#pragma once

#include <ostream>

namespace orlicz::cli {

/// Entry point of the orlicz_kit command. Returns the process exit code:
/// 0 success, 2 bad input, 3 numerical failure, 4 simulation failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orlicz::cli
