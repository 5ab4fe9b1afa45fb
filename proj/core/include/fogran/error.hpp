#pragma once

#include <stdexcept>
#include <string>

namespace fogran {

// Invalid parameters or a regime the requested operation does not cover.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A computed object failed a consistency check (decode failure, bound violation).
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fogran
