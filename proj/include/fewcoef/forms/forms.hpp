#pragma once

#include "fewcoef/lmodel/coefficients.hpp"
#include "fewcoef/lmodel/functional_equation.hpp"
#include "fewcoef/lmodel/instance.hpp"
#include "fewcoef/numerics/mp.hpp"

#include <gmpxx.h>

#include <array>
#include <vector>

namespace fewcoef::forms {

/// a_0 + a_1 q + ... + a_N q^N with integer coefficients.
struct QExpansion {
    int weight = 0;
    std::vector<mpz_class> coeffs;

    long length() const { return static_cast<long>(coeffs.size()) - 1; }
    const mpz_class& operator[](long n) const { return coeffs.at(static_cast<size_t>(n)); }
};

QExpansion multiply(const QExpansion& a, const QExpansion& b);
QExpansion operator-(const QExpansion& a, const QExpansion& b);
QExpansion scale(const QExpansion& a, const mpz_class& num, const mpz_class& den);

/// σ_k(n).
mpz_class divisor_sigma(long n, int k);

/// E4 = 1 + 240 Σ σ3(n) q^n or E6 = 1 - 504 Σ σ5(n) q^n.
QExpansion eisenstein(int k, long N);
/// Δ = (E4³ - E6²) / 1728, so a_n = τ(n).
QExpansion delta_expansion(long N);

/// x + y √d with rational x, y.
struct QuadraticSurd {
    mpq_class x, y;
    mpz_class d;

    mp::Real value(mp::Bits bits) const;
};

/// The two normalized Hecke eigenforms spanning S_24(SL2(Z)).
struct S24Eigenforms {
    /// Integer-normalized coefficients a_n (n = 0..N) in Q(√d).
    std::array<std::vector<QuadraticSurd>, 2> a;
    /// T2 eigenvalues a_2, larger first.
    std::array<QuadraticSurd, 2> lambda2;
    /// Basis matrix of T2 on (f1 = q + O(q³), f2 = q² + O(q³)).
    std::array<std::array<mpz_class, 2>, 2> t2_matrix;
    QExpansion f1, f2;
};

S24Eigenforms hecke_eigenforms_s24(long N);

/// b_n = a_n / n^((k-1)/2) for a degree-2 level-1 table from integer data.
lmodel::CoefficientTable classical_table(const std::vector<mpz_class>& a, int k, long cutoff, mp::Bits bits);
lmodel::CoefficientTable classical_table(const std::vector<QuadraticSurd>& a, int k, long cutoff, mp::Bits bits);

/// Δ with every b_n known (the oracle instance).
lmodel::LFunctionInstance delta_instance(long cutoff, mp::Bits bits);
/// Eigenform `which` (0 or 1) of S_24 with every b_n known.
lmodel::LFunctionInstance s24_instance(int which, long cutoff, mp::Bits bits);

/// m-th power of a degree 1 or 2 L-function: local factors Q_p(X)^m from the
/// known prime coefficients, primes above `known_through` (or unknown in the
/// input) left as symbols. m = 1 returns the instance unchanged.
lmodel::LFunctionInstance power_lift(const lmodel::CoefficientTable& c, const lmodel::FunctionalEquation& fe, int m,
                                     long known_through, long cutoff, mp::Bits bits);

}  // namespace fewcoef::forms
