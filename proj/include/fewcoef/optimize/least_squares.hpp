#pragma once

#include "fewcoef/optimize/design.hpp"

#include <map>
#include <string>
#include <vector>

namespace fewcoef::optimize {

/// Weights c_j with Σc_j = 1.
struct WeightVector {
    std::vector<std::string> labels;
    std::vector<mp::Real> c;
    /// Minimized Σ_r bound_r² (Σ_j c_j coeff_jr)².
    mp::Real objective;
    /// log10 of the largest over smallest pivot of the augmented system.
    double log10_condition = 0;
};

struct LsOptions {
    Grouping grouping = Grouping::per_index;
    /// Only columns with key below this enter the objective.
    long symbol_cut = 1000;
    /// Symbols left as free parameters (their multipliers are reported by combine).
    std::set<Symbol> free;
};

/// Minimizes Σ_{key < symbol_cut} bound² (Σ_j c_j coeff_j)² subject to Σc = 1.
/// Throws NumericalError when the evaluations are too similar to separate.
WeightVector ls_weights(const std::vector<afe::Evaluation>& evals, const lmodel::CoefficientTable& table,
                        const LsOptions& opt = {});
WeightVector ls_weights(const Design& design, const std::vector<std::string>& labels, long symbol_cut,
                        mp::Bits bits);

struct Combination {
    mp::Real value;
    mp::Real l1_error;
    /// Σ |c_j| rounding_bound_j, kept apart from the truncation error.
    mp::Real rounding;
    /// Σ_j c_j · (multiplier of b_q) for each free symbol.
    std::map<Symbol, mp::Real> multipliers;
};

/// value = Σ c_j known_j; l1_error = Σ_r |Σ_j c_j coeff_jr| bound_r + Σ |c_j| tail_j over all columns.
Combination combine(const std::vector<afe::Evaluation>& evals, const WeightVector& w,
                    const lmodel::CoefficientTable& table, const LsOptions& opt = {});
Combination combine(const std::vector<afe::Evaluation>& evals, const WeightVector& w, const Design& design);

/// Σ_r bound_r² (Σ_j c_j coeff_jr)² over columns with key < symbol_cut.
mp::Real ls_objective(const Design& design, const std::vector<mp::Real>& c, long symbol_cut);

}  // namespace fewcoef::optimize
