#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pstack {

// Base class for data-dependent failures (file contents, wire format,
// cross-module consistency). Violated preconditions throw
// std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two grid-bound objects with different resolutions were combined.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

// Text or binary input that does not parse. line is 1-based, 0 = n/a.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Raw sample outside [0,1] with clamping disabled.
class ValueRangeError : public Error {
public:
    using Error::Error;
};

// Indicator answer table whose positive set is not a valid extremum stack.
class InconsistentAnswersError : public Error {
public:
    using Error::Error;
};

enum class DecodeErrorKind {
    BadMagic,
    BadVersion,
    TruncatedBitstream,
    InvariantViolation,
};

const char* to_string(DecodeErrorKind kind) noexcept;

class DecodeError : public Error {
public:
    DecodeError(DecodeErrorKind kind, const std::string& detail);
    DecodeErrorKind kind() const noexcept { return kind_; }

private:
    DecodeErrorKind kind_;
};

}  // namespace pstack
