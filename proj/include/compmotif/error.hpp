#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compmotif {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed edge-list input; carries the 1-based line number (0 when not line-specific).
class ParseError : public Error {
public:
    ParseError(const std::string & message, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Unreadable or corrupt binary store, or other file-level failure.
class IoError : public Error {
public:
    using Error::Error;
};

/// Arguments violating an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace compmotif
