#pragma once

#include <ostream>

namespace qsheaf {

/// Entry point of the `qsheaf` tool. Returns 0 on success, 1 on invalid input
/// and 2 when a verification fails.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsheaf
