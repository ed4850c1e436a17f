#pragma once

#include <ostream>

namespace gabnc::cli {

/// Runs one command line. Exit codes: 0 pass, 1 mathematical failure,
/// 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gabnc::cli
