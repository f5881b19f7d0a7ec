#pragma once

#include <stdexcept>
#include <string>

namespace asymbell {

// Incompatible shapes, lengths or index ranges.
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds the configured memory or enumeration budget.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A strategy or distribution failed its validity checks.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Operation applied to a strategy in the wrong mode (label vs sign, POVM vs observable).
struct ModeError : std::runtime_error {
    explicit ModeError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical output outside its tolerated range (negative probability, imaginary residue).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input artifact.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid command line or precondition on user-supplied arguments.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace asymbell
