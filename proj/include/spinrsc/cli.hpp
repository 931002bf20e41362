#pragma once

#include <iosfwd>

namespace spinrsc::cli {

/// Runs one subcommand. Returns 0 on success, 1 on a domain or numerical
/// error, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinrsc::cli
