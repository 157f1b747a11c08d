#pragma once

#include <stdexcept>
#include <string>

namespace zetalaw {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A series or limit that does not converge for the requested parameters.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// Input data is malformed, non-finite or degenerate.
class DataError : public Error {
public:
    using Error::Error;
};

/// Matrix or dataset dimensions do not agree.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A matrix that must be inverted is singular or too ill-conditioned.
class ConditioningError : public Error {
public:
    ConditioningError(const std::string& what, double smallest_eigenvalue)
        : Error(what), smallest_eigenvalue_(smallest_eigenvalue) {}

    double smallest_eigenvalue() const noexcept { return smallest_eigenvalue_; }

private:
    double smallest_eigenvalue_;
};

/// A learning-curve request asks for more samples than the data holds.
class SizingError : public Error {
public:
    SizingError(const std::string& what, long long max_feasible_n)
        : Error(what), max_feasible_n_(max_feasible_n) {}

    long long max_feasible_n() const noexcept { return max_feasible_n_; }

private:
    long long max_feasible_n_;
};

/// Two inputs that must share a protocol (e.g. a sample-size grid) do not.
class ProtocolError : public Error {
public:
    using Error::Error;
};

/// A curve carries no signal to fit.
class DegenerateFitError : public Error {
public:
    using Error::Error;
};

}  // namespace zetalaw
