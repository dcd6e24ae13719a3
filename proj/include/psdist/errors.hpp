#pragma once

#include <stdexcept>
#include <string>

namespace psdist {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Certification of a floor failed at the highest working precision.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

class InvalidDelta : public Error {
public:
    using Error::Error;
};

class InvalidLambda : public Error {
public:
    using Error::Error;
};

/// Vaughan decomposition requested outside N1 >= v^2.
class RegimeViolation : public Error {
public:
    using Error::Error;
};

class GammaOutOfRange : public Error {
public:
    using Error::Error;
};

/// Malformed user input (real-number specs, CLI values, file headers).
class InvalidConfig : public Error {
public:
    using Error::Error;
};

}  // namespace psdist
