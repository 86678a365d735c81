#pragma once

#include <stdexcept>

namespace histolab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed inputs: bad lengths, non-increasing timestamps, invalid specs.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A statistic needed as a denominator is zero (flat signal, zero mean/std).
class DegenerateSignalError : public Error {
public:
    using Error::Error;
};

// Requested anomaly placement cannot fit into the series.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Timestamp outside the reconstructable interval.
class RangeError : public Error {
public:
    using Error::Error;
};

// Model estimation failed (singular design matrix, zero-variance series).
class FitError : public Error {
public:
    using Error::Error;
};

// File read/write failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace histolab
