#include "fewcoef/optimize/least_squares.hpp"

#include "fewcoef/numerics/errors.hpp"

#include <cmath>
#include <sstream>

namespace fewcoef::optimize {

using mp::Real;

namespace {

/// Solves M x = rhs in place by Gaussian elimination with partial pivoting.
/// Returns log10(max |pivot| / min |pivot|); throws on a negligible pivot.
double solve_dense(std::vector<std::vector<Real>>& M, std::vector<Real>& rhs, mp::Bits bits) {
    const size_t n = rhs.size();
    Real scale(0);
    for (const auto& row : M)
        for (const auto& v : row) scale = mp::max(scale, mp::abs(v));
    const Real negligible = scale * mp::pow2(-static_cast<long>(bits) + 16, bits);
    Real big(0), small(-1);
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        for (size_t i = k + 1; i < n; ++i)
            if (mp::abs(M[i][k]) > mp::abs(M[p][k])) p = i;
        Real piv = mp::abs(M[p][k]);
        if (!(piv > negligible)) {
            std::ostringstream os;
            os << "singular least-squares system at pivot " << k << " (|pivot| " << piv.str(3) << ", matrix scale "
               << scale.str(3) << "); evaluations are too similar";
            throw NumericalError(os.str());
        }
        big = mp::max(big, piv);
        small = small.sign() < 0 ? piv : mp::min(small, piv);
        std::swap(M[k], M[p]);
        std::swap(rhs[k], rhs[p]);
        for (size_t i = k + 1; i < n; ++i) {
            if (M[i][k].is_zero()) continue;
            Real f = M[i][k] / M[k][k];
            for (size_t c = k; c < n; ++c) M[i][c] -= f * M[k][c];
            rhs[i] -= f * rhs[k];
        }
    }
    for (size_t k = n; k-- > 0;) {
        Real acc = rhs[k];
        for (size_t c = k + 1; c < n; ++c) acc -= M[k][c] * rhs[c];
        rhs[k] = acc / M[k][k];
    }
    return (mp::log10(big) - mp::log10(small)).to_double();
}

mp::Bits design_bits(const std::vector<afe::Evaluation>& evals) {
    mp::Bits b = 0;
    for (const auto& e : evals) b = std::max(b, e.bits);
    return b ? b : mp::working_bits();
}

std::vector<std::string> labels_of(const std::vector<afe::Evaluation>& evals) {
    std::vector<std::string> out;
    for (const auto& e : evals) out.push_back(e.g.describe());
    return out;
}

}  // namespace

Real ls_objective(const Design& design, const std::vector<Real>& c, long symbol_cut) {
    Real acc(0);
    for (size_t r = 0; r < design.columns(); ++r) {
        if (design.keys[r] >= symbol_cut) continue;
        Real s(0);
        for (size_t j = 0; j < c.size(); ++j) s += c[j] * design.coeff[j][r];
        s *= design.bound[r];
        acc += s * s;
    }
    return acc;
}

WeightVector ls_weights(const Design& design, const std::vector<std::string>& labels, long symbol_cut,
                        mp::Bits bits) {
    const size_t J = design.coeff.size();
    if (J < 1) throw InputError("least squares needs at least one evaluation");
    // the Gram matrix squares the dynamic range of the coefficients
    const mp::Bits solve_bits = 2 * bits + 64;
    mp::ScopedBits g(solve_bits);

    std::vector<size_t> rows;
    for (size_t r = 0; r < design.columns(); ++r)
        if (design.keys[r] < symbol_cut) rows.push_back(r);
    std::vector<std::vector<Real>> W(J, std::vector<Real>(rows.size()));
    for (size_t j = 0; j < J; ++j)
        for (size_t i = 0; i < rows.size(); ++i) {
            Real v = design.coeff[j][rows[i]];
            v.round_to(solve_bits);
            W[j][i] = v * design.bound[rows[i]];
        }

    std::vector<std::vector<Real>> M(J + 1, std::vector<Real>(J + 1, Real(0)));
#pragma omp parallel for schedule(dynamic, 1)
    for (long a = 0; a < static_cast<long>(J); ++a) {
        mp::ScopedBits tg(solve_bits);
        for (size_t b = static_cast<size_t>(a); b < J; ++b) {
            Real acc(0);
            for (size_t i = 0; i < rows.size(); ++i) acc += W[a][i] * W[b][i];
            M[a][b] = acc;
        }
    }
    for (size_t a = 0; a < J; ++a) {
        for (size_t b = 0; b < a; ++b) M[a][b] = M[b][a];
        M[a][J] = Real(1);
        M[J][a] = Real(1);
    }
    // rescale the constraint row so pivots are comparable with the Gram block
    Real gscale(0);
    for (size_t a = 0; a < J; ++a) gscale = mp::max(gscale, mp::abs(M[a][a]));
    if (gscale.is_zero()) gscale = Real(1);
    Real root = mp::sqrt(gscale);
    for (size_t a = 0; a < J; ++a) {
        M[a][J] = root;
        M[J][a] = root;
    }
    std::vector<Real> rhs(J + 1, Real(0));
    rhs[J] = root;

    WeightVector w;
    w.log10_condition = solve_dense(M, rhs, solve_bits);
    w.labels = labels;
    w.c.assign(rhs.begin(), rhs.begin() + static_cast<long>(J));
    // remove the rounding drift from Σc = 1
    Real sum(0);
    for (const auto& v : w.c) sum += v;
    for (auto& v : w.c) v /= sum;
    w.objective = ls_objective(design, w.c, symbol_cut);
    for (auto& v : w.c) v.round_to(solve_bits);
    return w;
}

WeightVector ls_weights(const std::vector<afe::Evaluation>& evals, const lmodel::CoefficientTable& table,
                        const LsOptions& opt) {
    Design d = build_design(evals, table, opt.grouping, opt.free);
    return ls_weights(d, labels_of(evals), opt.symbol_cut, design_bits(evals));
}

Combination combine(const std::vector<afe::Evaluation>& evals, const WeightVector& w, const Design& design) {
    if (w.c.size() != evals.size() || design.coeff.size() != evals.size())
        throw InputError("weights and evaluations are not aligned");
    mp::ScopedBits g(std::max(design_bits(evals), w.c.empty() ? 0 : w.c.front().bits()));
    Combination out;
    out.value = Real(0);
    out.l1_error = Real(0);
    out.rounding = Real(0);
    for (size_t j = 0; j < evals.size(); ++j) {
        out.rounding += mp::abs(w.c[j]) * evals[j].rounding_bound;
        out.value += w.c[j] * evals[j].known_part;
        out.l1_error += mp::abs(w.c[j]) * evals[j].tail_bound;
    }
    for (size_t r = 0; r < design.columns(); ++r) {
        Real s(0);
        for (size_t j = 0; j < evals.size(); ++j) s += w.c[j] * design.coeff[j][r];
        out.l1_error += mp::abs(s) * design.bound[r];
    }
    if (!design.free.empty())
        for (const auto& entry : design.free.front()) {
            const Symbol q = entry.first;
            Real m(0);
            for (size_t j = 0; j < evals.size(); ++j) m += w.c[j] * design.free[j].at(q);
            out.multipliers[q] = m;
        }
    return out;
}

Combination combine(const std::vector<afe::Evaluation>& evals, const WeightVector& w,
                    const lmodel::CoefficientTable& table, const LsOptions& opt) {
    return combine(evals, w, build_design(evals, table, opt.grouping, opt.free));
}

}  // namespace fewcoef::optimize
