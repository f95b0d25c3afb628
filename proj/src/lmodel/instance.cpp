#include "fewcoef/lmodel/instance.hpp"

#include "fewcoef/numerics/errors.hpp"

namespace fewcoef::lmodel {

void LFunctionInstance::validate() const {
    fe.validate();
    if (coeffs.degree() != fe.degree) throw InputError(label + ": coefficient degree differs from functional equation");
    const auto& one = coeffs[1];
    if (one.kind != CoefficientEntry::Kind::known || !(one.value == mp::Real(1)))
        throw InputError(label + ": b_1 must be known and equal to 1");
}

}  // namespace fewcoef::lmodel
