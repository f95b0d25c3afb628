#pragma once

#include "fewcoef/numerics/mp.hpp"
#include "fewcoef/numerics/precision.hpp"

#include <complex>
#include <vector>

namespace fewcoef::numerics {

/// Bernoulli number B_n as an exact rational (B_1 = -1/2).
mpq_class bernoulli(int n);

/// Γ(z) at the context's working precision, via Stirling's series after
/// shifting |z| past max(20, bits/4) and undoing the shift with the
/// recurrence. Throws GammaPoleError at non-positive integers.
mp::Complex complex_gamma(const mp::Complex& z, const PrecisionContext& ctx);

/// A logarithm of Γ(z); not necessarily the principal branch, so only
/// exp() of it (or its real part) is meaningful.
mp::Complex log_gamma(const mp::Complex& z, const PrecisionContext& ctx);

/// Double precision log Γ, accurate to ~1e-12 for Re z > 0; used for
/// planning integration ranges, never for results.
std::complex<double> log_gamma_approx(std::complex<double> z);

}  // namespace fewcoef::numerics
