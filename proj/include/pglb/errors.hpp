#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pglb {

/// Base class for every fault raised by the library. Domain-level negative
/// answers (divergence, NotAnEncoding, refutations) are values, not errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string& what)
        : Error("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

    /// Zero-based character offset into the parsed text.
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class EmptyProgram : public Error {
public:
    EmptyProgram() : Error("program contains no instructions") {}
};

class MalformedThread : public Error {
public:
    using Error::Error;
};

class NotInInterface : public Error {
public:
    using Error::Error;
};

class StateSpaceMismatch : public Error {
public:
    using Error::Error;
};

class WrongFocus : public Error {
public:
    using Error::Error;
};

class UnknownMethod : public Error {
public:
    using Error::Error;
};

class NotDupProgram : public Error {
public:
    using Error::Error;
};

class NotHaltingProgram : public Error {
public:
    using Error::Error;
};

class HypothesisViolation : public Error {
public:
    using Error::Error;
};

class PositionOutOfRange : public Error {
public:
    using Error::Error;
};

class LiteralError : public Error {
public:
    using Error::Error;
};

}  // namespace pglb
