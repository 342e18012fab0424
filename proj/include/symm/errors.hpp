#pragma once

#include <stdexcept>
#include <string>

namespace symm {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Curve violates |gamma'(s)| > 0 on the sampling grid.
class InvalidCurveError : public Error {
public:
    using Error::Error;
};

/// Too few samples to resolve the requested coefficient window.
class AliasingError : public Error {
public:
    using Error::Error;
};

/// Vector or request exceeds the stored truncation order.
class TruncationError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Configuration file could not be parsed or validated.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Linear system whose condition estimate exceeds the solver cutoff.
class SingularSystemError : public Error {
public:
    SingularSystemError(const std::string& what, double condition)
        : Error(what), condition_(condition) {}

    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

}  // namespace symm
