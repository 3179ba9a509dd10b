#pragma once

#include <stdexcept>
#include <string>

namespace pid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments: bad indices, overlapping variable sets, wrong arity.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Mathematical domain violations (e.g. KL divergence without absolute continuity).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Numerical solver failures: LP breakdown, iteration limits.
class SolverError : public Error {
public:
    using Error::Error;
};

/// A computed quantity violated a structural invariant beyond round-off.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Requested configuration is outside what is implemented (e.g. lattices for n > 3).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Malformed distribution file or source-collection string.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string& what) : ParseError(what, 0) {}

    /// 1-based line number, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace pid
