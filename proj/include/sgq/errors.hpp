#pragma once

#include <stdexcept>
#include <string>

namespace sgq {

// Base of everything the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterError : Error { using Error::Error; };
struct NumericError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct AccuracyError : Error { using Error::Error; };

struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, double last_residual)
        : Error(what), residual(last_residual) {}
    double residual;
};

}  // namespace sgq
