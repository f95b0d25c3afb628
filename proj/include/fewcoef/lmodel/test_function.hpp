#pragma once

#include "fewcoef/numerics/mp.hpp"

#include <string>

namespace fewcoef::lmodel {

/// g(s) = exp(i b s + c (s - i t0)^2).
struct TestFunction {
    mp::Real b = 0;
    mp::Real c = 0;
    mp::Real t0 = 0;

    /// exp(-i β s + c (s - i t0)^2), the family used throughout.
    static TestFunction beta(const mp::Real& beta, const mp::Real& c = mp::Real(0), const mp::Real& t0 = mp::Real(0));

    /// c > 0, or c = 0 and |b| < π d / 4.
    bool valid_for(int degree) const;
    mp::Complex operator()(const mp::Complex& s) const;
    /// log g(s), exact (no branch issue).
    mp::Complex log_at(const mp::Complex& s) const;
    std::string describe() const;
};

}  // namespace fewcoef::lmodel
