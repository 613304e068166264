#pragma once

#include <stdexcept>
#include <string>

namespace elci {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input data: negative times, event flags outside {0,1}, malformed CSV.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Sample too small or without any observed event.
class DegenerateSample : public Error {
public:
    using Error::Error;
};

// Estimating equation has no root in the search domain.
class NoSignChange : public Error {
public:
    using Error::Error;
};

// Linear estimating equation with a vanishing denominator.
class ZeroDenominator : public Error {
public:
    using Error::Error;
};

// EL constraint set is empty: influence values do not straddle zero.
class InfeasibleConstraint : public Error {
public:
    using Error::Error;
};

// A risk-set denominator vanished (only reachable under pathological ties).
class DivisionByZero : public Error {
public:
    DivisionByZero(const std::string& msg, std::size_t index)
        : Error(msg), index(index) {}
    std::size_t index;
};

// Adaptive quadrature could not reach the requested tolerance.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

// Quadrature detected a non-integrable tail (e.g. censoring support ends
// before the lifetime support does).
class DivergentIntegral : public Error {
public:
    using Error::Error;
};

// Scaled-EL comparator cannot form its ratio: zero score variance.
class ZeroVariance : public Error {
public:
    using Error::Error;
};

}  // namespace elci
