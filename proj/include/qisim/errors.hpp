#pragma once

#include <stdexcept>
#include <string>

namespace qisim {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: violated precondition, invalid configuration, out-of-range value.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Both drive fields are zero, so dressed states are undefined.
class DegenerateDriveError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Requested a configuration the model does not cover (e.g. non-uniform
// giant-atom spacing).
class UnsupportedConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Numeric failure while evaluating an otherwise valid request.
class NumericError : public Error {
public:
    using Error::Error;
};

// Closed-form expression evaluated at (or too close to) a pole of its
// denominator.
class PoleError : public NumericError {
public:
    using NumericError::NumericError;
};

// Division by a vanishing physical denominator (e.g. Delta = Gamma_e = 0 in
// adiabatic elimination, Delta = 0 in the lattice depth).
class SingularityError : public NumericError {
public:
    using NumericError::NumericError;
};

// The ODE integrator could not make progress; last_good_time is the last
// grid time that was reached successfully.
class IntegrationError : public NumericError {
public:
    IntegrationError(const std::string& what, double last_good)
        : NumericError(what), last_good_time(last_good) {}
    double last_good_time;
};

// The Liouvillian null space is larger than the trace constraint can fix.
class NonUniqueSteadyStateError : public NumericError {
public:
    using NumericError::NumericError;
};

// Filesystem/output failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace qisim
