#pragma once

#include "fewcoef/numerics/mp.hpp"

#include <cmath>
#include <stdexcept>

namespace fewcoef {

/// Binary working precision plus the number of decimal digits the caller
/// wants in final answers.
struct PrecisionContext {
    mp::Bits working_bits = 256;
    int target_digits = 30;

    static constexpr int kMinGuardBits = 64;

    /// Smallest conforming context for `digits`, with `guard` extra bits.
    static PrecisionContext for_digits(int digits, int guard = kMinGuardBits) {
        if (digits < 1) throw std::invalid_argument("target digits must be positive");
        if (guard < kMinGuardBits) throw std::invalid_argument("guard must be at least 64 bits");
        PrecisionContext ctx;
        ctx.target_digits = digits;
        ctx.working_bits = static_cast<mp::Bits>(std::ceil(digits * 3.3219280948873623)) + guard;
        return ctx;
    }

    bool valid() const {
        return target_digits >= 1 &&
               working_bits >= static_cast<mp::Bits>(std::ceil(target_digits * 3.3219280948873623)) + kMinGuardBits;
    }

    /// 10^-target_digits at working precision.
    mp::Real target_tolerance() const {
        mp::ScopedBits g(working_bits);
        return mp::pow(mp::Real(10), -static_cast<long>(target_digits));
    }
};

/// Installs a context's working precision on the current thread.
class ContextScope {
public:
    explicit ContextScope(const PrecisionContext& ctx) : bits_(ctx.working_bits) {}

private:
    mp::ScopedBits bits_;
};

}  // namespace fewcoef
