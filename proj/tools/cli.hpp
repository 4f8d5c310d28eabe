#pragma once

#include <iosfwd>

namespace idp::cli {

/// Runs the `idp` command line. Diagnostics go to `err`; data goes to files
/// only. Returns the process exit code: 0 success, 1 pipeline error, 2 usage or
/// configuration error.
int run(int argc, const char* const* argv, std::ostream& err);

} // namespace idp::cli
