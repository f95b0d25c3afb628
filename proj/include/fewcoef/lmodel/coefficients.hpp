#pragma once

#include "fewcoef/numerics/mp.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

namespace fewcoef::lmodel {

/// Label of an unknown coefficient: the index q of b_q.
using Symbol = std::int64_t;

struct CoefficientEntry {
    enum class Kind { known, unknown, partial };
    Kind kind = Kind::unknown;
    /// Known value, or the known scalar of a partial entry.
    mp::Real value;
    /// Exact rational behind `value` before the n^shift factor, when available.
    mpq_class exact;
    bool has_exact = false;
    Symbol symbol = 0;
};

/// b_n for 1 <= n <= cutoff with unknowns tracked by symbol.
///
/// When values_available is false the table carries only the known/unknown
/// pattern and every known value is a zero placeholder.
class CoefficientTable {
public:
    CoefficientTable() = default;
    CoefficientTable(long cutoff, int degree);

    long cutoff() const { return static_cast<long>(entries_.size()) - 1; }
    int degree() const { return degree_; }
    const CoefficientEntry& operator[](long n) const { return entries_.at(static_cast<size_t>(n)); }
    CoefficientEntry& at(long n) { return entries_.at(static_cast<size_t>(n)); }

    void set_known(long n, mp::Real value);
    void set_known_exact(long n, const mpq_class& value);
    void set_unknown(long n, Symbol q);
    void set_partial(long n, mp::Real scalar, Symbol q);

    /// Known entries are scaled by n^shift (partial scalars by m^shift with
    /// m = n / symbol) when exact rationals are materialized.
    const mpq_class& n_shift() const { return n_shift_; }
    void set_n_shift(const mpq_class& s) { n_shift_ = s; }
    /// Recomputes every exact-backed value at `bits`.
    void materialize(mp::Bits bits);

    mp::Real bound_constant() const { return bound_constant_; }
    void set_bound_constant(mp::Real c) { bound_constant_ = std::move(c); }
    bool values_available() const { return values_available_; }
    void set_values_available(bool v) { values_available_ = v; }

    /// Distinct unknown symbols in increasing order.
    std::vector<Symbol> symbols() const;
    /// C · Ram(q, d).
    mp::Real symbol_bound(Symbol q) const;
    /// C · Ram(n, d), the bound on |b_n| itself.
    mp::Real index_bound(long n) const;
    bool all_known() const;

    /// Copy with every unknown symbol replaced by the value in `values`.
    CoefficientTable substitute(const std::map<Symbol, mp::Real>& values) const;
    /// Copy truncated (or padded with unknowns) to a new cutoff.
    CoefficientTable with_cutoff(long cutoff) const;

private:
    std::vector<CoefficientEntry> entries_;
    int degree_ = 1;
    mpq_class n_shift_ = 0;
    mp::Real bound_constant_ = 1;
    bool values_available_ = true;
};

/// ∏ over p^j || n of binom(d + j - 1, j).
mpz_class ramanujan_bound(long n, int d);

/// Number of divisors.
long divisor_count(long n);

/// Smallest prime factor for 0..n (spf[0] = spf[1] = 0).
std::vector<long> smallest_prime_factors(long n);
bool is_prime(long n);
/// (p, j) with n = p^j, or (0, 0) if n is not a prime power.
std::pair<long, int> prime_power(long n);

/// Local factors Q_p(X) = 1 + c_1 X + ... keyed by p (lowest degree first).
using ExactFactors = std::map<long, std::vector<mpq_class>>;
using RealFactors = std::map<long, std::vector<mp::Real>>;

/// b_n from ∏ Q_p(p^-s)^-1 with exact rational factors; the resulting
/// values are scaled by n^shift. Primes <= cutoff with no factor become
/// unknown symbols.
CoefficientTable expand_euler(const ExactFactors& factors, long cutoff, int degree, const mpq_class& shift = 0,
                              mp::Bits bits = mp::working_bits());
CoefficientTable expand_euler(const RealFactors& factors, long cutoff, int degree,
                              mp::Bits bits = mp::working_bits());

/// Table with b_1 = 1 and every other b_n its own unknown symbol.
CoefficientTable all_unknown_table(long cutoff, int degree);

}  // namespace fewcoef::lmodel
