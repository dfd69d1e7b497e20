#pragma once

#include <iosfwd>

namespace padicsym::cli {

/// Exit codes: 0 success, 1 computation error or failed check, 2 bad flags.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace padicsym::cli
