#pragma once

#include <ostream>

namespace bbl::cli {

/// Runs the command line front end. Returns 0 on success, 1 on input errors
/// and 2 on numerical failures such as non-convergence.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bbl::cli
