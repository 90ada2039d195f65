#pragma once

#include <stdexcept>
#include <string>

namespace switchstab {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rejected input: bad dimensions, non-finite entries, out-of-range indices,
/// malformed files. Maps to CLI exit code 2.
struct InvalidInput : Error {
    using Error::Error;
};

/// An enumeration request would exceed the configured product budget.
/// Maps to CLI exit code 3.
struct BudgetExceeded : Error {
    using Error::Error;
};

/// An iterative routine failed to reach its tolerance. Raised instead of
/// returning a silently inaccurate value.
struct NotConverged : Error {
    using Error::Error;
};

} // namespace switchstab
