#pragma once

#include <stdexcept>
#include <string>

namespace quadrep {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation
/// (even discriminant, zero where a unit is needed, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of a closed formula does not hold; the message
/// says how to obtain a valid input.
class PreconditionError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A configured size bound (factorization, enumeration) was exceeded.
class BoundExceeded : public Error {
public:
    using Error::Error;
};

/// A bounded search (coprime genus representative) ran out of candidates.
class SearchFailure : public Error {
public:
    using Error::Error;
};

/// Two routes that must agree did not. Always indicates a bug.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Fixed-width integer arithmetic would have wrapped around.
class OverflowError : public Error {
public:
    using Error::Error;
};

} // namespace quadrep
