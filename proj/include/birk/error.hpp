#pragma once

#include <stdexcept>
#include <string>

namespace birk {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text input: scalar grammar, matrix files, database files.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Division by zero in exact arithmetic.
class DivisionByZeroError : public Error {
public:
    explicit DivisionByZeroError(const std::string& what) : Error(what) {}
};

// A computation exceeded a configured resource cap.
class ResourceCapError : public Error {
public:
    explicit ResourceCapError(const std::string& what) : Error(what) {}
};

// File contents violate a structural invariant (corrupt or tampered data).
class DataIntegrityError : public Error {
public:
    explicit DataIntegrityError(const std::string& what) : Error(what) {}
};

// Filesystem failure while reading or writing.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

// Caller passed inconsistent arguments (bad group name, bad flag combination).
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(what) {}
};

// A condition that should be impossible; indicates a bug, not bad input.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(what) {}
};

} // namespace birk
