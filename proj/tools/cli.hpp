#pragma once

#include <iosfwd>

namespace qsl::cli {

/// Runs the qsl command line. Returns 0 on success, 2 on usage errors and
/// invalid parameters, 1 on numerical failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsl::cli
