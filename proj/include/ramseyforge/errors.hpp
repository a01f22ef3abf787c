#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedMorphism : Error {
    using Error::Error;
};

struct LanguageMismatch : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

// Raised when a search or construction would exceed a caller-supplied bound.
struct CapExceeded : Error {
    using Error::Error;
};

// Malformed interchange input. line/column are 1-based; 0 when unknown.
struct FormatError : Error {
    FormatError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(what), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

} // namespace rf
