#pragma once

#include "fewcoef/numerics/mp.hpp"
#include "fewcoef/numerics/precision.hpp"

#include <functional>

namespace fewcoef::numerics {

/// Trapezoid nodes ν + ikh for |kh| <= half_width.
struct IntegrationPlan {
    mp::Real nu = 1.0;
    mp::Real step = 1.0 / 64;
    mp::Real half_width = 16.0;

    bool valid() const;
    /// Node count on one side of the real axis.
    long nodes_per_side() const;
};

struct QuadratureResult {
    mp::Complex value;
    mp::Real half_width;  // truncation actually used
    long nodes = 0;
};

using VerticalIntegrand = std::function<mp::Complex(const mp::Complex&)>;

/// (1/2πi) ∫_{ν-i∞}^{ν+i∞} f(z) dz by the trapezoid rule.
///
/// Starts from plan.half_width and keeps extending outward while the
/// outermost nodes are still above 2^-(bits+8) of the running sum, up to
/// 16 times the planned width. Throws NonConvergenceError if the last node
/// is still above 2^-(bits/2) of the sum.
QuadratureResult integrate_vertical_ex(const VerticalIntegrand& f, const IntegrationPlan& plan,
                                       const PrecisionContext& ctx);

inline mp::Complex integrate_vertical(const VerticalIntegrand& f, const IntegrationPlan& plan,
                                      const PrecisionContext& ctx) {
    return integrate_vertical_ex(f, plan, ctx).value;
}

/// Relative tolerance that step halving and width doubling must respect.
mp::Real quadrature_tolerance(const PrecisionContext& ctx);

}  // namespace fewcoef::numerics
