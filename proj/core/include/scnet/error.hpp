#pragma once

#include <stdexcept>
#include <string>

namespace scnet {

// Base for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad inputs: malformed files, out-of-range parameters, schema violations.
// The CLI maps these to exit code 1.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// Numerical failures (e.g. solver non-convergence). CLI exit code 2.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double residual = 0.0)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace scnet
