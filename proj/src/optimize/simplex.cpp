#include "fewcoef/optimize/simplex.hpp"

#include "fewcoef/numerics/errors.hpp"

#include <limits>

namespace fewcoef::optimize {

using mp::Real;

namespace {

class Tableau {
public:
    Tableau(const LinearProgram& lp, mp::Bits bits) : bits_(bits) {
        mp::ScopedBits g(bits);
        m_ = lp.b.size();
        n_ = lp.cost.size();
        if (lp.upper.size() != n_ || lp.A.size() != m_) throw InputError("inconsistent linear program dimensions");
        tol_ = mp::pow2(-static_cast<long>(bits) + 48, bits);

        // rows scaled to unit max coefficient
        std::vector<Real> row_scale(m_, Real(1));
        for (size_t i = 0; i < m_; ++i) {
            Real s(0);
            for (const auto& v : lp.A[i]) s = mp::max(s, mp::abs(v));
            if (s.sign() > 0) row_scale[i] = s;
        }
        for (size_t i = 0; i < m_; ++i)
            if (lp.b[i].sign() < 0) art_rows_.push_back(i);
        total_ = n_ + m_ + art_rows_.size();
        T_.assign(m_, std::vector<Real>(total_, Real(0)));
        beta_.assign(m_, Real(0));
        basis_.assign(m_, 0);
        upper_.assign(total_, Real(-1));  // negative = unbounded
        for (size_t j = 0; j < n_; ++j) upper_[j] = lp.upper[j];
        at_upper_.assign(total_, false);
        is_basic_.assign(total_, false);

        size_t art = n_ + m_;
        for (size_t i = 0; i < m_; ++i) {
            const bool flip = lp.b[i].sign() < 0;
            const Real sign = flip ? Real(-1) : Real(1);
            for (size_t j = 0; j < n_; ++j) T_[i][j] = sign * lp.A[i][j] / row_scale[i];
            T_[i][n_ + i] = sign;
            beta_[i] = sign * lp.b[i] / row_scale[i];
            if (flip) {
                T_[i][art] = Real(1);
                basis_[i] = art++;
            } else {
                basis_[i] = n_ + i;
            }
            is_basic_[basis_[i]] = true;
        }
    }

    bool phase_one() {
        if (art_rows_.empty()) return true;
        std::vector<Real> c(total_, Real(0));
        for (size_t j = n_ + m_; j < total_; ++j) c[j] = Real(1);
        run(c, total_);
        Real infeas(0);
        for (size_t i = 0; i < m_; ++i)
            if (basis_[i] >= n_ + m_) infeas += beta_[i];
        Real scale(1);
        for (const auto& v : beta_) scale = mp::max(scale, mp::abs(v));
        if (infeas > tol_ * scale * Real(static_cast<long>(m_ + 1))) return false;
        // drive zero-level artificials out of the basis where possible
        for (size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_ + m_) continue;
            for (size_t j = 0; j < n_ + m_; ++j)
                if (!is_basic_[j] && mp::abs(T_[i][j]) > tol_) {
                    pivot(i, j, at_upper_[j] ? upper_[j] : Real(0));
                    break;
                }
        }
        return true;
    }

    void phase_two(const std::vector<Real>& cost) {
        std::vector<Real> c(total_, Real(0));
        for (size_t j = 0; j < n_; ++j) c[j] = cost[j];
        run(c, n_ + m_);
    }

    Real value_of(size_t j) const {
        if (is_basic_[j])
            for (size_t i = 0; i < m_; ++i)
                if (basis_[i] == j) return beta_[i];
        return at_upper_[j] ? upper_[j] : Real(0);
    }

    size_t rows() const { return m_; }
    size_t structural() const { return n_; }
    long pivots() const { return pivots_; }
    const Real& tol() const { return tol_; }

private:
    /// Minimizes c·y; columns >= `allowed` may not enter.
    void run(const std::vector<Real>& c, size_t allowed) {
        mp::ScopedBits g(bits_);
        // reduced costs d = c - c_B T
        std::vector<Real> d = c;
        for (size_t i = 0; i < m_; ++i) {
            const Real& cb = c[basis_[i]];
            if (cb.is_zero()) continue;
            for (size_t j = 0; j < total_; ++j) d[j] -= cb * T_[i][j];
        }
        Real cscale(0);
        for (const auto& v : c) cscale = mp::max(cscale, mp::abs(v));
        const Real dtol = tol_ * (cscale.sign() > 0 ? cscale : Real(1));
        const long limit = 200000;
        for (long iter = 0; iter < limit; ++iter) {
            size_t enter = total_;
            for (size_t j = 0; j < allowed; ++j) {
                if (is_basic_[j]) continue;
                if ((!at_upper_[j] && d[j] < -dtol) || (at_upper_[j] && d[j] > dtol)) {
                    enter = j;
                    break;
                }
            }
            if (enter == total_) return;
            const Real sigma = at_upper_[enter] ? Real(-1) : Real(1);

            bool bounded = upper_[enter].sign() >= 0;
            Real best = bounded ? upper_[enter] : Real(0);
            size_t leave_row = m_;
            bool leave_to_upper = false;
            for (size_t i = 0; i < m_; ++i) {
                Real a = sigma * T_[i][enter];
                Real lim;
                bool to_upper;
                if (a > tol_) {
                    lim = mp::max(beta_[i], Real(0)) / a;
                    to_upper = false;
                } else if (a < -tol_ && upper_[basis_[i]].sign() >= 0) {
                    lim = mp::max(upper_[basis_[i]] - beta_[i], Real(0)) / (-a);
                    to_upper = true;
                } else {
                    continue;
                }
                if (!bounded || lim < best ||
                    (lim == best && leave_row < m_ && basis_[i] < basis_[leave_row])) {
                    best = lim;
                    leave_row = i;
                    leave_to_upper = to_upper;
                    bounded = true;
                }
            }
            if (!bounded) throw NumericalError("linear program is unbounded");

            const Real t = best;
            if (leave_row == m_) {
                // bound flip
                for (size_t i = 0; i < m_; ++i) beta_[i] -= sigma * t * T_[i][enter];
                at_upper_[enter] = !at_upper_[enter];
                ++pivots_;
                continue;
            }
            for (size_t i = 0; i < m_; ++i)
                if (i != leave_row) beta_[i] -= sigma * t * T_[i][enter];
            Real entering_value = at_upper_[enter] ? upper_[enter] - t : t;
            const size_t leaving = basis_[leave_row];
            at_upper_[leaving] = leave_to_upper;
            pivot(leave_row, enter, entering_value);
            // reduced cost row follows the pivot
            const Real dj = d[enter];
            if (!dj.is_zero())
                for (size_t j = 0; j < total_; ++j) d[j] -= dj * T_[leave_row][j];
        }
        throw NonConvergenceError("simplex iteration limit reached");
    }

    void pivot(size_t r, size_t j, const Real& entering_value) {
        mp::ScopedBits g(bits_);
        const Real p = T_[r][j];
        for (auto& v : T_[r]) v /= p;
        for (size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            const Real f = T_[i][j];
            if (f.is_zero()) continue;
            for (size_t c = 0; c < total_; ++c)
                if (!T_[r][c].is_zero()) T_[i][c] -= f * T_[r][c];
        }
        is_basic_[basis_[r]] = false;
        basis_[r] = j;
        is_basic_[j] = true;
        at_upper_[j] = false;
        beta_[r] = entering_value;
        ++pivots_;
    }

    mp::Bits bits_;
    size_t m_ = 0, n_ = 0, total_ = 0;
    std::vector<size_t> art_rows_;
    std::vector<std::vector<Real>> T_;
    std::vector<Real> beta_;
    std::vector<size_t> basis_;
    std::vector<Real> upper_;
    std::vector<bool> at_upper_, is_basic_;
    Real tol_;
    long pivots_ = 0;
};

}  // namespace

SimplexResult solve_simplex(const LinearProgram& lp, mp::Bits bits) {
    mp::ScopedBits g(bits);
    Tableau t(lp, bits);
    SimplexResult out;
    if (!t.phase_one()) {
        out.feasible = false;
        out.pivots = t.pivots();
        return out;
    }
    t.phase_two(lp.cost);
    out.feasible = true;
    out.pivots = t.pivots();
    out.objective = Real(0);
    for (size_t j = 0; j < t.structural(); ++j) {
        out.y.push_back(t.value_of(j));
        out.objective += lp.cost[j] * out.y.back();
    }
    for (size_t i = 0; i < t.rows(); ++i) {
        Real slack = t.value_of(t.structural() + i);
        out.active.push_back(mp::abs(slack) <= t.tol() * Real(1024));
    }
    return out;
}

}  // namespace fewcoef::optimize
