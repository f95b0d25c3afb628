#pragma once

#include "fewcoef/lmodel/coefficients.hpp"
#include "fewcoef/lmodel/functional_equation.hpp"

#include <string>

namespace fewcoef::lmodel {

struct LFunctionInstance {
    std::string label;
    FunctionalEquation fe;
    CoefficientTable coeffs;

    /// Throws InputError if the table and functional equation disagree.
    void validate() const;
};

}  // namespace fewcoef::lmodel
