#pragma once

#include <stdexcept>
#include <string>

namespace mlgosc {

// A requested series tolerance cannot be met at the available truncation.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A series or recursion lost too much precision, or a guarded denominator vanished.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mlgosc
