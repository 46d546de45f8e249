#pragma once

#include <stdexcept>
#include <string>

namespace cara {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or contract-violating input (dimension mismatch, empty sets, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// An enumeration or iteration exceeded its configured budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A representation cannot answer a query (e.g. oracle without membership).
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed. Always a bug or a broken precondition.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace cara
