#pragma once

#include "fewcoef/afe/evaluate.hpp"
#include "fewcoef/lmodel/coefficients.hpp"

#include <set>
#include <vector>

namespace fewcoef::optimize {

using lmodel::Symbol;

/// How unknown terms are grouped into columns.
///
/// per_symbol: one column per unknown symbol q with coefficients deltas[q]
/// and bound C Ram(q, d). per_index: one column per non-known index n with
/// coefficient δ_n and the same bound as afe::error_l1_index.
enum class Grouping { per_index, per_symbol };

/// Unknown-term coefficients of a set of evaluations, column by column.
struct Design {
    Grouping grouping = Grouping::per_index;
    /// Symbol (per_symbol) or index (per_index) of each column.
    std::vector<long> keys;
    std::vector<mp::Real> bound;
    /// coeff[j][r]: evaluation j, column r.
    std::vector<std::vector<mp::Real>> coeff;
    /// Σ over free symbols: free[j] maps symbol → multiplier of b_q in evaluation j.
    std::vector<std::map<Symbol, mp::Real>> free;

    size_t columns() const { return keys.size(); }
};

/// Columns for every unknown term of `evals` (which must share s and the
/// instance). Terms belonging to `free` symbols are collected separately.
Design build_design(const std::vector<afe::Evaluation>& evals, const lmodel::CoefficientTable& table,
                    Grouping grouping, const std::set<Symbol>& free = {});

/// Throws InputError unless the evaluations share s, instance and cutoff.
void check_compatible(const std::vector<afe::Evaluation>& evals);

}  // namespace fewcoef::optimize
