#pragma once

#include "fewcoef/lmodel/functional_equation.hpp"
#include "fewcoef/lmodel/test_function.hpp"
#include "fewcoef/numerics/mp.hpp"
#include "fewcoef/numerics/precision.hpp"
#include "fewcoef/numerics/quadrature.hpp"

#include <optional>
#include <vector>

namespace fewcoef::afe {

/// Quadrature and precision settings shared by one or more evaluations at
/// the same s.
struct AfePlan {
    numerics::IntegrationPlan quad;
    /// Nodes ν + ikh for |k| <= nodes_per_side.
    long nodes_per_side = 0;
    /// Internal working precision (the context's bits plus cancellation).
    mp::Bits bits = 256;
    /// Estimated bits lost to cancellation in the node sums.
    double cancellation_bits = 0;
};

struct PlanOptions {
    /// Force the contour abscissa; otherwise the cheapest admissible ν is used.
    std::optional<double> nu;
    /// Force the node spacing.
    std::optional<double> step;
    /// Multiplies the automatically chosen half width.
    double width_factor = 1.0;
    /// Extra bits on top of the automatic choice.
    int extra_bits = 0;
};

/// Smallest admissible ν: the contour must pass right of z = 0 and of every
/// gamma pole of both integrands.
double nu_lower_bound(const lmodel::FunctionalEquation& fe, const mp::Complex& s);

/// Chooses ν, step, half width and precision from a double-precision profile
/// of the integrands so that every g in `gs` is resolved to ctx's bits.
AfePlan make_plan(const lmodel::FunctionalEquation& fe, const mp::Complex& s, const std::vector<lmodel::TestFunction>& gs,
                  const PrecisionContext& ctx, const PlanOptions& opt = {});

}  // namespace fewcoef::afe
