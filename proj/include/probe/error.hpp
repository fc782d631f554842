#pragma once

#include <stdexcept>
#include <string>

namespace probe {

/// Position in a source text, 1-based. Line 0 means "unknown".
struct SourceLoc {
    int line = 0;
    int column = 0;

    std::string str() const {
        return std::to_string(line) + ":" + std::to_string(column);
    }
};

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, SourceLoc loc)
        : Error(loc.str() + ": " + message), loc_(loc), message_(message) {}

    SourceLoc location() const { return loc_; }
    const std::string& bare_message() const { return message_; }

private:
    SourceLoc loc_;
    std::string message_;
};

/// Data evaluation failures: unbound variables, sort mismatches, division by zero.
class EvalError : public Error {
public:
    using Error::Error;
};

/// Errors in the semantic layer (infinite sorts where finiteness is required,
/// unguarded unfolding, malformed distributions).
class SemanticError : public Error {
public:
    using Error::Error;
};

/// A configured resource bound was exceeded. Distinct from user errors so the
/// command line can report it with its own exit status.
class LimitError : public Error {
public:
    using Error::Error;
};

} // namespace probe
