#include "fewcoef/optimize/linear_program.hpp"

#include "fewcoef/numerics/errors.hpp"
#include "fewcoef/optimize/simplex.hpp"

#include <sstream>

namespace fewcoef::optimize {

using mp::Real;

namespace {

struct Setup {
    LinearProgram lp;
    std::vector<size_t> column;  // design column of each LP variable
    Real value_offset;            // known_1 - Σ δ1 B over LP variables
    Real value_slack;             // tail_1 + worst case of columns beyond the cut
    mp::Bits bits = 0;
};

Setup build(const std::vector<afe::Evaluation>& evals, const Design& d, long symbol_cut, const Real& tail_slack) {
    Setup s;
    for (const auto& e : evals) s.bits = std::max(s.bits, e.bits);
    s.bits += 32;
    mp::ScopedBits g(s.bits);
    const size_t J = evals.size();

    for (size_t r = 0; r < d.columns(); ++r)
        if (d.keys[r] <= symbol_cut) s.column.push_back(r);
    const size_t n = s.column.size();
    for (size_t r : s.column) s.lp.upper.push_back(Real(2) * d.bound[r]);

    s.value_offset = evals[0].known_part;
    for (size_t k = 0; k < n; ++k) s.value_offset -= d.coeff[0][s.column[k]] * d.bound[s.column[k]];
    s.value_slack = evals[0].tail_bound + evals[0].rounding_bound;
    for (size_t r = 0; r < d.columns(); ++r)
        if (d.keys[r] > symbol_cut) s.value_slack += mp::abs(d.coeff[0][r]) * d.bound[r];

    for (size_t j = 1; j < J; ++j) {
        Real tol = evals[0].tail_bound + evals[j].tail_bound + evals[0].rounding_bound + evals[j].rounding_bound + tail_slack;
        for (size_t r = 0; r < d.columns(); ++r)
            if (d.keys[r] > symbol_cut) tol += mp::abs(d.coeff[0][r] - d.coeff[j][r]) * d.bound[r];
        std::vector<Real> a(n);
        Real aB(0);
        for (size_t k = 0; k < n; ++k) {
            const size_t r = s.column[k];
            a[k] = d.coeff[0][r] - d.coeff[j][r];
            aB += a[k] * d.bound[r];
        }
        Real c = evals[0].known_part - evals[j].known_part;
        // |c + a·x| <= tol with x = y - B
        s.lp.A.push_back(a);
        s.lp.b.push_back(tol - c + aB);
        std::vector<Real> na(n);
        for (size_t k = 0; k < n; ++k) na[k] = -a[k];
        s.lp.A.push_back(std::move(na));
        s.lp.b.push_back(tol + c - aB);
    }
    return s;
}

}  // namespace

LPResult lp_bounds(const std::vector<afe::Evaluation>& evals, const lmodel::CoefficientTable& table,
                   std::optional<Symbol> objective, const LpOptions& opt) {
    if (!table.values_available())
        throw InputError("linear programming needs the known coefficient values, not only their pattern");
    const Grouping grouping =
        opt.grouping.value_or(table.values_available() ? Grouping::per_symbol : Grouping::per_index);
    Design d = build_design(evals, table, grouping);
    Setup s = build(evals, d, opt.symbol_cut, opt.tail_slack);
    mp::ScopedBits g(s.bits);
    const size_t n = s.column.size();

    LPResult out;
    out.variables = n;
    long target = -1;
    if (objective) {
        out.objective_label = "b_" + std::to_string(*objective);
        for (size_t k = 0; k < n; ++k)
            if (d.keys[s.column[k]] == *objective) target = static_cast<long>(k);
        if (target < 0) {
            // not a column of the program: only its box is known
            Real b = grouping == Grouping::per_symbol ? table.symbol_bound(*objective)
                                                      : table.index_bound(static_cast<long>(*objective));
            out.min = -b;
            out.max = b;
            return out;
        }
    } else {
        out.objective_label = "value";
    }

    LinearProgram lo = s.lp, hi = s.lp;
    lo.cost.assign(n, Real(0));
    hi.cost.assign(n, Real(0));
    for (size_t k = 0; k < n; ++k) {
        Real c = target >= 0 ? Real(static_cast<long>(k) == target ? 1 : 0) : d.coeff[0][s.column[k]];
        lo.cost[k] = c;
        hi.cost[k] = -c;
    }
    SimplexResult rmin, rmax;
#pragma omp parallel sections
    {
#pragma omp section
        rmin = solve_simplex(lo, s.bits);
#pragma omp section
        rmax = solve_simplex(hi, s.bits);
    }
    if (!rmin.feasible || !rmax.feasible)
        throw NumericalError("linear program infeasible: evaluations disagree beyond their tails "
                             "(inconsistent inputs or precision exhausted)");
    out.pivots = rmin.pivots + rmax.pivots;
    out.active_at_min = rmin.active;
    out.active_at_max = rmax.active;
    if (target >= 0) {
        const Real& B = d.bound[s.column[static_cast<size_t>(target)]];
        out.min = rmin.objective - B;
        out.max = -rmax.objective - B;
    } else {
        out.min = s.value_offset + rmin.objective - s.value_slack;
        out.max = s.value_offset - rmax.objective + s.value_slack;
    }
    return out;
}

std::map<Symbol, Recovered> recover_coefficients(const std::vector<afe::Evaluation>& evals,
                                                 const lmodel::CoefficientTable& table,
                                                 const std::vector<Symbol>& symbols, const LpOptions& opt) {
    std::vector<LPResult> res(symbols.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < static_cast<long>(symbols.size()); ++i) {
        try {
            res[i] = lp_bounds(evals, table, symbols[i], opt);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    std::map<Symbol, Recovered> out;
    for (size_t i = 0; i < symbols.size(); ++i) {
        mp::ScopedBits g(res[i].min.bits());
        out[symbols[i]] = {(res[i].min + res[i].max) / 2L, (res[i].max - res[i].min) / 2L};
    }
    return out;
}

}  // namespace fewcoef::optimize
