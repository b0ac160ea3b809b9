#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace gbp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidKernel : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Inclusion-exclusion produced a value below the clamp band.
class PositivityViolation : public Error {
public:
    PositivityViolation(const std::string& what, double value)
        : Error(what), value_(value) {}
    double value() const { return value_; }

private:
    double value_;
};

class RenewalBreakdown : public Error {
public:
    using Error::Error;
};

class Refusal : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class QueryError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class SamplingError : public Error {
public:
    using Error::Error;
};

// Series or quadrature did not reach the requested tolerance.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, std::complex<double> partial, double estimate)
        : Error(what), partial_(partial), estimate_(estimate) {}
    std::complex<double> partial() const { return partial_; }
    double error_estimate() const { return estimate_; }

private:
    std::complex<double> partial_;
    double estimate_;
};

}  // namespace gbp
