#include "fewcoef/lmodel/coefficients.hpp"

#include "fewcoef/numerics/errors.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace fewcoef::lmodel {

using mp::Real;
using Kind = CoefficientEntry::Kind;

CoefficientTable::CoefficientTable(long cutoff, int degree) : entries_(static_cast<size_t>(cutoff) + 1), degree_(degree) {
    if (cutoff < 1) throw InputError("coefficient cutoff must be at least 1");
    if (degree < 1) throw InputError("degree must be positive");
    for (long n = 1; n <= cutoff; ++n) entries_[n].symbol = n;
    set_known_exact(1, 1);
}

void CoefficientTable::set_known(long n, Real value) {
    auto& e = at(n);
    e.kind = Kind::known;
    e.value = std::move(value);
    e.has_exact = false;
    e.symbol = 0;
}

void CoefficientTable::set_known_exact(long n, const mpq_class& value) {
    auto& e = at(n);
    e.kind = Kind::known;
    e.exact = value;
    e.has_exact = true;
    e.symbol = 0;
    e.value = Real(value);
}

void CoefficientTable::set_unknown(long n, Symbol q) {
    auto& e = at(n);
    e.kind = Kind::unknown;
    e.value = Real(0);
    e.has_exact = false;
    e.symbol = q;
}

void CoefficientTable::set_partial(long n, Real scalar, Symbol q) {
    auto& e = at(n);
    e.kind = Kind::partial;
    e.value = std::move(scalar);
    e.has_exact = false;
    e.symbol = q;
}

void CoefficientTable::materialize(mp::Bits bits) {
    mp::ScopedBits g(bits);
    for (long n = 1; n <= cutoff(); ++n) {
        auto& e = entries_[n];
        if (!e.has_exact || e.kind == Kind::unknown) continue;
        Real v(e.exact);
        if (n_shift_ != 0) {
            long base = e.kind == Kind::partial ? n / e.symbol : n;
            if (base != 1) v *= mp::pow(Real(base), Real(n_shift_));
        }
        e.value = v;
    }
    bound_constant_.round_to(bits);
}

std::vector<Symbol> CoefficientTable::symbols() const {
    std::set<Symbol> s;
    for (long n = 1; n <= cutoff(); ++n)
        if (entries_[n].kind != Kind::known) s.insert(entries_[n].symbol);
    return {s.begin(), s.end()};
}

Real CoefficientTable::symbol_bound(Symbol q) const {
    return bound_constant_ * Real(ramanujan_bound(static_cast<long>(q), degree_));
}

Real CoefficientTable::index_bound(long n) const { return bound_constant_ * Real(ramanujan_bound(n, degree_)); }

bool CoefficientTable::all_known() const {
    for (long n = 1; n <= cutoff(); ++n)
        if (entries_[n].kind != Kind::known) return false;
    return true;
}

CoefficientTable CoefficientTable::substitute(const std::map<Symbol, Real>& values) const {
    CoefficientTable out = *this;
    for (long n = 1; n <= cutoff(); ++n) {
        const auto& e = entries_[n];
        if (e.kind == Kind::known) continue;
        auto it = values.find(e.symbol);
        if (it == values.end()) continue;
        if (e.kind == Kind::unknown)
            out.set_known(n, it->second);
        else
            out.set_known(n, e.value * it->second);
    }
    return out;
}

CoefficientTable CoefficientTable::with_cutoff(long cutoff) const {
    CoefficientTable out(cutoff, degree_);
    out.n_shift_ = n_shift_;
    out.bound_constant_ = bound_constant_;
    out.values_available_ = values_available_;
    for (long n = 1; n <= cutoff; ++n) {
        if (n <= this->cutoff())
            out.entries_[n] = entries_[n];
        else
            out.set_unknown(n, n);
    }
    return out;
}

std::vector<long> smallest_prime_factors(long n) {
    std::vector<long> spf(static_cast<size_t>(std::max(n, 1L)) + 1, 0);
    for (long i = 2; i <= n; ++i) {
        if (spf[i] != 0) continue;
        for (long j = i; j <= n; j += i)
            if (spf[j] == 0) spf[j] = i;
    }
    return spf;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<long, int> prime_power(long n) {
    if (n < 2) return {0, 0};
    long p = 0;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            p = d;
            break;
        }
    if (p == 0) return {n, 1};
    int j = 0;
    while (n % p == 0) {
        n /= p;
        ++j;
    }
    return n == 1 ? std::pair<long, int>{p, j} : std::pair<long, int>{0, 0};
}

mpz_class ramanujan_bound(long n, int d) {
    if (n < 1) throw std::invalid_argument("ramanujan_bound needs n >= 1");
    mpz_class out = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        unsigned long j = 0;
        while (n % p == 0) {
            n /= p;
            ++j;
        }
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(d) + j - 1, j);
        out *= b;
    }
    if (n > 1) out *= d;
    return out;
}

long divisor_count(long n) {
    long count = 1;
    for (long p = 2; p * p <= n; ++p) {
        int j = 0;
        while (n % p == 0) {
            n /= p;
            ++j;
        }
        count *= j + 1;
    }
    if (n > 1) count *= 2;
    return count;
}

namespace {

/// Coefficients of 1/Q(X) up to X^jmax.
template <class T>
std::vector<T> inverse_series(const std::vector<T>& q, int jmax, const T& zero, const T& one) {
    std::vector<T> c(static_cast<size_t>(jmax) + 1, zero);
    c[0] = one;
    for (int j = 1; j <= jmax; ++j) {
        T acc = zero;
        for (int i = 1; i < static_cast<int>(q.size()) && i <= j; ++i) acc += q[i] * c[j - i];
        c[j] = -acc;
    }
    return c;
}

template <class T>
void check_factor(long p, const std::vector<T>& q, int degree, const T& one) {
    if (q.empty() || !(q[0] == one)) throw InputError("local factor at p=" + std::to_string(p) + " must have constant term 1");
    if (static_cast<int>(q.size()) - 1 > degree)
        throw InputError("local factor at p=" + std::to_string(p) + " exceeds the degree");
}

/// Shared multiplicative assembly; `assign` stores a known product.
template <class T, class Assign, class Scalar>
CoefficientTable assemble(const std::map<long, std::vector<T>>& factors, long cutoff, int degree, const T& zero,
                          const T& one, Assign assign, Scalar to_real) {
    CoefficientTable table(cutoff, degree);
    // prime power values
    std::map<long, T> pp;  // p^j -> value for known p
    for (long p = 2; p <= cutoff; ++p) {
        if (!is_prime(p)) continue;
        auto it = factors.find(p);
        if (it == factors.end()) continue;
        check_factor(p, it->second, degree, one);
        int jmax = 0;
        for (long q = p; q <= cutoff; q *= p) ++jmax;
        auto c = inverse_series(it->second, jmax, zero, one);
        long q = 1;
        for (int j = 1; j <= jmax; ++j) {
            q *= p;
            pp.emplace(q, c[j]);
        }
    }
    auto spf = smallest_prime_factors(cutoff);
    for (long n = 2; n <= cutoff; ++n) {
        T known = one;
        Symbol unknown_q = 0;
        long m = n;
        while (m > 1) {
            long p = spf[m];
            long q = 1;
            while (m % p == 0) {
                m /= p;
                q *= p;
            }
            auto it = pp.find(q);
            if (it != pp.end()) {
                known *= it->second;
            } else {
                if (unknown_q != 0)
                    throw InputError("b_" + std::to_string(n) + " involves two unknown prime powers (" +
                                     std::to_string(unknown_q) + ", " + std::to_string(q) + ")");
                unknown_q = q;
            }
        }
        if (unknown_q == 0)
            assign(table, n, known, 0);
        else if (unknown_q == n)
            table.set_unknown(n, unknown_q);
        else
            assign(table, n, known, unknown_q);
    }
    (void)to_real;
    return table;
}

}  // namespace

CoefficientTable expand_euler(const ExactFactors& factors, long cutoff, int degree, const mpq_class& shift,
                              mp::Bits bits) {
    mp::ScopedBits g(bits);
    auto assign = [](CoefficientTable& t, long n, const mpq_class& v, Symbol q) {
        if (q == 0) {
            t.set_known_exact(n, v);
        } else {
            t.set_partial(n, Real(v), q);
            t.at(n).exact = v;
            t.at(n).has_exact = true;
        }
    };
    auto table = assemble<mpq_class>(factors, cutoff, degree, mpq_class(0), mpq_class(1), assign, 0);
    table.set_n_shift(shift);
    table.materialize(bits);
    return table;
}

CoefficientTable expand_euler(const RealFactors& factors, long cutoff, int degree, mp::Bits bits) {
    mp::ScopedBits g(bits);
    auto assign = [](CoefficientTable& t, long n, const Real& v, Symbol q) {
        if (q == 0)
            t.set_known(n, v);
        else
            t.set_partial(n, v, q);
    };
    return assemble<Real>(factors, cutoff, degree, Real(0), Real(1), assign, 0);
}

CoefficientTable all_unknown_table(long cutoff, int degree) {
    CoefficientTable t(cutoff, degree);
    for (long n = 2; n <= cutoff; ++n) t.set_unknown(n, n);
    return t;
}

}  // namespace fewcoef::lmodel
