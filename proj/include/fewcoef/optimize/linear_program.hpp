#pragma once

#include "fewcoef/optimize/design.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fewcoef::optimize {

struct LPResult {
    std::string objective_label;
    mp::Real min;
    mp::Real max;
    /// Constraint rows (two per evaluation j >= 2) holding with equality at the minimum / maximum.
    std::vector<bool> active_at_min, active_at_max;
    long pivots = 0;
    /// Column count of the program.
    size_t variables = 0;
};

struct LpOptions {
    /// Default: per_symbol when the table carries values, else per_index.
    std::optional<Grouping> grouping;
    /// Columns with key above this are not LP variables; their worst case is added to the slack.
    long symbol_cut = 1000;
    mp::Real tail_slack = 0;
};

/// Range of the value (objective unset) or of one unknown symbol consistent
/// with every evaluation agreeing with the first one up to tails and rounding.
/// Throws NumericalError when the constraints are infeasible.
LPResult lp_bounds(const std::vector<afe::Evaluation>& evals, const lmodel::CoefficientTable& table,
                   std::optional<Symbol> objective = std::nullopt, const LpOptions& opt = {});

struct Recovered {
    mp::Real midpoint;
    mp::Real halfwidth;
};

/// lp_bounds once per symbol; symbols run in parallel.
std::map<Symbol, Recovered> recover_coefficients(const std::vector<afe::Evaluation>& evals,
                                                 const lmodel::CoefficientTable& table,
                                                 const std::vector<Symbol>& symbols, const LpOptions& opt = {});

}  // namespace fewcoef::optimize
