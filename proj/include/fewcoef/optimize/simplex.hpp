#pragma once

#include "fewcoef/numerics/mp.hpp"

#include <vector>

namespace fewcoef::optimize {

/// minimize cost·y subject to A y <= b (row-wise) and 0 <= y <= upper.
struct LinearProgram {
    std::vector<std::vector<mp::Real>> A;
    std::vector<mp::Real> b;
    std::vector<mp::Real> cost;
    std::vector<mp::Real> upper;
};

struct SimplexResult {
    bool feasible = false;
    mp::Real objective;
    std::vector<mp::Real> y;
    /// Row i holds with equality at the optimum.
    std::vector<bool> active;
    long pivots = 0;
};

/// Dense bounded-variable two-phase simplex with Bland's rule.
SimplexResult solve_simplex(const LinearProgram& lp, mp::Bits bits);

}  // namespace fewcoef::optimize
