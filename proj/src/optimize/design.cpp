#include "fewcoef/optimize/design.hpp"

#include "fewcoef/numerics/errors.hpp"

namespace fewcoef::optimize {

using mp::Real;
using Kind = lmodel::CoefficientEntry::Kind;

void check_compatible(const std::vector<afe::Evaluation>& evals) {
    if (evals.empty()) throw InputError("no evaluations given");
    const auto& a = evals.front();
    for (const auto& e : evals) {
        if (e.instance_label != a.instance_label) throw InputError("evaluations of different instances");
        if (!(e.s == a.s)) throw InputError("evaluations at different points s");
        if (e.cutoff != a.cutoff) throw InputError("evaluations with different cutoffs");
    }
}

Design build_design(const std::vector<afe::Evaluation>& evals, const lmodel::CoefficientTable& table,
                    Grouping grouping, const std::set<Symbol>& free) {
    check_compatible(evals);
    mp::Bits bits = 0;
    for (const auto& e : evals) bits = std::max(bits, e.bits);
    mp::ScopedBits g(bits ? bits : mp::working_bits());

    Design d;
    d.grouping = grouping;
    const size_t J = evals.size();
    d.coeff.assign(J, {});
    d.free.assign(J, {});
    for (size_t j = 0; j < J; ++j)
        for (Symbol q : free) {
            auto it = evals[j].deltas.find(q);
            d.free[j][q] = it == evals[j].deltas.end() ? Real(0) : it->second;
        }

    if (grouping == Grouping::per_symbol) {
        for (Symbol q : table.symbols()) {
            if (free.count(q)) continue;
            d.keys.push_back(static_cast<long>(q));
            d.bound.push_back(table.symbol_bound(q));
            for (size_t j = 0; j < J; ++j) {
                auto it = evals[j].deltas.find(q);
                d.coeff[j].push_back(it == evals[j].deltas.end() ? Real(0) : it->second);
            }
        }
        return d;
    }

    const long N = std::min(table.cutoff(), evals.front().cutoff);
    for (long n = 1; n <= N; ++n) {
        const auto& entry = table[n];
        if (entry.kind == Kind::known || free.count(entry.symbol)) continue;
        Real b;
        if (entry.kind == Kind::unknown)
            b = table.symbol_bound(entry.symbol);
        else if (table.values_available())
            b = mp::abs(entry.value) * table.symbol_bound(entry.symbol);
        else
            b = table.index_bound(n);
        d.keys.push_back(n);
        d.bound.push_back(b);
        for (size_t j = 0; j < J; ++j) {
            const auto& v = evals[j].delta;
            d.coeff[j].push_back(n < static_cast<long>(v.size()) ? v[n] : Real(0));
        }
    }
    return d;
}

}  // namespace fewcoef::optimize
