#pragma once

#include <stdexcept>
#include <string>

namespace rngprobe {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem / IO failure.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed input (text formats, manifests, payloads).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Precondition violation on an operation's arguments.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A bit source ran out before a read could be satisfied.
class ExhaustedError : public Error {
public:
    using Error::Error;
};

}  // namespace rngprobe
