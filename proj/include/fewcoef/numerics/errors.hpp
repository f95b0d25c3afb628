#pragma once

#include <stdexcept>
#include <string>

namespace fewcoef {

/// Base for all numerical failures raised by the library.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GammaPoleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Malformed user input (files, CLI values, invalid parameter combinations).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fewcoef
