#pragma once

#include "fewcoef/numerics/mp.hpp"
#include "fewcoef/numerics/precision.hpp"

#include <vector>

namespace fewcoef::numerics {

/// Roots of Σ coeffs[i] x^i (lowest degree first) by Aberth iteration.
/// Degree at most 8; throws NonConvergenceError after the iteration cap.
std::vector<mp::Complex> poly_roots(const std::vector<mp::Complex>& coeffs, const PrecisionContext& ctx);

/// p(x) by Horner.
mp::Complex poly_eval(const std::vector<mp::Complex>& coeffs, const mp::Complex& x);

}  // namespace fewcoef::numerics
