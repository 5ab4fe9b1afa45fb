#pragma once

#include <ostream>

namespace fogran::cli {

enum ExitCode { Ok = 0, DomainFailure = 1, VerificationFailure = 2, Usage = 64 };

// Runs one command line; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fogran::cli
