#pragma once

#include <stdexcept>
#include <string>

namespace boofdeg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input (hex tables, DNF, read-once formulas, rationals).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    explicit ParseError(const std::string& what) : Error(what), position_(0) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Well-formed text whose length or range does not match the declared arity.
class EncodingError : public Error {
public:
    using Error::Error;
};

class SubstitutionError : public Error {
public:
    using Error::Error;
};

class CompositionError : public Error {
public:
    using Error::Error;
};

/// An operation was asked to run above its documented arity cap.
class CapError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A constructed witness failed exact re-verification. Always an internal bug.
class VerificationError : public Error {
public:
    using Error::Error;
};

}  // namespace boofdeg
