#pragma once

#include <stdexcept>
#include <string>

namespace kgx {

// Base class for every failure raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input data; the message carries the source name and line number.
struct ParseError : Error {
    using Error::Error;
};

// Structurally valid input that violates referential rules (unknown ids,
// redirect cycles, duplicate keys).
struct IntegrityError : Error {
    using Error::Error;
};

// API precondition violated by the caller.
struct ContractError : Error {
    using Error::Error;
};

// A configured cap was exceeded.
struct CapacityError : Error {
    using Error::Error;
};

// A query cannot be expanded (empty after filtering, degenerate weights).
struct PipelineError : Error {
    using Error::Error;
};

// File system failure; the CLI maps this to exit code 2.
struct IoError : Error {
    using Error::Error;
};

} // namespace kgx
