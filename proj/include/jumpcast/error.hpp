#pragma once

#include <stdexcept>
#include <string>

namespace jumpcast {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A model, horizon or run parameter violates its invariants.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// An argument lies outside the domain of a function (negative time, S <= T, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The relative volatility is requested while the adjusted trend is exactly zero.
class UndefinedGammaError : public Error {
public:
    UndefinedGammaError()
        : Error("relative volatility undefined for beta = 0; all forecasts coincide with p_T") {}
};

/// A batch or Monte Carlo run was requested with too few samples.
class InsufficientSampleError : public Error {
public:
    using Error::Error;
};

} // namespace jumpcast
