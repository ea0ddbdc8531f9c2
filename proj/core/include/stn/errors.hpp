#pragma once

#include <stdexcept>

namespace stn {

// Caller passed arguments that violate a documented precondition.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The query is well-formed but cannot be answered exactly within the
// configured sieve: answering would require data beyond the table.
// Completeness is never faked by truncation; callers either rebuild with a
// larger limit or treat the result as unavailable.
struct LimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The exact computation is beyond desk scale (memory or search range).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input shape not supported, e.g. factoring an integer wider than 64 bits
// that did not arrive with an explicit factorization.
struct UnsupportedInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace stn
