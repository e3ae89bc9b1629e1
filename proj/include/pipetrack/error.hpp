#pragma once

#include <stdexcept>
#include <string>

namespace pipetrack {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes, so new error kinds should derive from one of the two groups:
// configuration problems (exit 2) or mission failures (exit 1).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class InvalidThreshold : public InvalidParameter {
public:
    using InvalidParameter::InvalidParameter;
};

class ImageTooSmall : public InvalidParameter {
public:
    using InvalidParameter::InvalidParameter;
};

/// Malformed input text. `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::string source, int line, const std::string &message)
        : Error(format(source, line, message)), source_(std::move(source)), line_(line) {}

    const std::string &source() const noexcept { return source_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string &source, int line, const std::string &message) {
        std::string out = source.empty() ? std::string("<input>") : source;
        if (line > 0) out += ":" + std::to_string(line);
        return out + ": " + message;
    }

    std::string source_;
    int line_;
};

class UnknownVariable : public ParseError {
public:
    using ParseError::ParseError;
};

class UnknownTerm : public ParseError {
public:
    using ParseError::ParseError;
};

class EmptyAntecedent : public ParseError {
public:
    using ParseError::ParseError;
};

/// No connected region survived noise removal.
class NoObject : public Error {
public:
    using Error::Error;
};

class EnvelopeExit : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

}  // namespace pipetrack
