#pragma once

#include <stdexcept>
#include <string>

namespace specvar {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch or a non-square operand where a square one is required.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Matrix is singular to working precision.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Scalar argument outside its admissible range (e.g. eps outside (0,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// NaN or Inf supplied where only finite values are admitted.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// An iterative kernel did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Problem size above the supported limit of an algorithm.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// Operation has no meaning for this input (e.g. stationary point with m = 1).
class NotApplicableError : public Error {
public:
    using Error::Error;
};

/// Block count disagrees across independent random draws.
class AmbiguityError : public Error {
public:
    AmbiguityError(const std::string& what, int first, int second)
        : Error(what), first_(first), second_(second) {}

    int first_candidate() const noexcept { return first_; }
    int second_candidate() const noexcept { return second_; }

private:
    int first_;
    int second_;
};

/// Invalid sweep / instance configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; the message carries the offending field path.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace specvar
