#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kpinf {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed `kgraph v1` text or expression text.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// An operation was called outside its domain (non-composable paths, bad degree, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A freshly built certificate failed symbolic re-verification. Always a bug.
class VerificationError : public Error {
public:
    using Error::Error;
};

/// Two independently computed quantities that must agree did not.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace kpinf
