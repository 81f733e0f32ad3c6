// errors.hpp — exception types shared across the library and CLI

#pragma once

#include <stdexcept>

namespace qsync {

// Raised when a destination cannot be opened or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qsync
