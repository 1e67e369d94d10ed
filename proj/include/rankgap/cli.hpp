#pragma once

#include <iosfwd>

namespace rankgap::cli {

/// Runs one command line. Exit codes: 0 success, 1 verification failed,
/// 2 input error, 3 resource cap exceeded.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rankgap::cli
