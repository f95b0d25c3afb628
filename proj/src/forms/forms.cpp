#include "fewcoef/forms/forms.hpp"

#include "fewcoef/numerics/errors.hpp"

#include <algorithm>

namespace fewcoef::forms {

using mp::Real;

QExpansion multiply(const QExpansion& a, const QExpansion& b) {
    long N = std::min(a.length(), b.length());
    QExpansion out;
    out.weight = a.weight + b.weight;
    out.coeffs.assign(static_cast<size_t>(N) + 1, 0);
    for (long i = 0; i <= N; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (long j = 0; i + j <= N; ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    return out;
}

QExpansion operator-(const QExpansion& a, const QExpansion& b) {
    if (a.weight != b.weight) throw InputError("cannot subtract q-expansions of different weight");
    long N = std::min(a.length(), b.length());
    QExpansion out;
    out.weight = a.weight;
    for (long n = 0; n <= N; ++n) out.coeffs.push_back(a.coeffs[n] - b.coeffs[n]);
    return out;
}

QExpansion scale(const QExpansion& a, const mpz_class& num, const mpz_class& den) {
    QExpansion out = a;
    for (auto& c : out.coeffs) {
        c *= num;
        if (!mpz_divisible_p(c.get_mpz_t(), den.get_mpz_t())) throw NumericalError("inexact q-expansion division");
        c /= den;
    }
    return out;
}

mpz_class divisor_sigma(long n, int k) {
    mpz_class s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
        s += t;
        long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
            s += t;
        }
    }
    return s;
}

QExpansion eisenstein(int k, long N) {
    if (N < 1) throw InputError("q-expansion length must be at least 1");
    long c;
    if (k == 4)
        c = 240;
    else if (k == 6)
        c = -504;
    else
        throw InputError("only E4 and E6 are provided");
    QExpansion e;
    e.weight = k;
    e.coeffs.assign(static_cast<size_t>(N) + 1, 0);
    e.coeffs[0] = 1;
    for (long n = 1; n <= N; ++n) e.coeffs[n] = c * divisor_sigma(n, k - 1);
    return e;
}

QExpansion delta_expansion(long N) {
    auto e4 = eisenstein(4, N), e6 = eisenstein(6, N);
    auto num = multiply(multiply(e4, e4), e4) - multiply(e6, e6);
    return scale(num, 1, 1728);
}

Real QuadraticSurd::value(mp::Bits bits) const {
    mp::ScopedBits g(bits);
    Real v(x);
    if (y != 0) v += Real(y) * mp::sqrt(Real(d));
    return v;
}

namespace {

/// n = s² d with d squarefree (n > 0).
std::pair<mpz_class, mpz_class> split_square(mpz_class n) {
    mpz_class s = 1;
    for (unsigned long p = 2; mpz_class(p) * p <= n; ++p) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p * p)) {
            n /= p * p;
            s *= p;
        }
    }
    return {s, n};
}

}  // namespace

S24Eigenforms hecke_eigenforms_s24(long N) {
    if (N < 2) throw InputError("need at least two q-expansion terms");
    // T2 needs a_{2n}; the basis is built to 2N + 2
    long M = 2 * N + 2;
    auto e4 = eisenstein(4, M);
    auto delta = delta_expansion(M);
    auto de43 = multiply(delta, multiply(multiply(e4, e4), e4));
    auto d2 = multiply(delta, delta);
    QExpansion f1 = de43;
    for (long n = 0; n <= M; ++n) f1.coeffs[n] -= de43[2] * d2[n];
    QExpansion f2 = d2;
    if (f1[1] != 1 || f1[2] != 0 || f2[1] != 0 || f2[2] != 1) throw NumericalError("S24 basis is not echelon");

    S24Eigenforms out;
    out.f1 = f1;
    out.f2 = f2;
    const mpz_class two23 = mpz_class(1) << 23;
    // T2 f1 = (a4(f1) + 2^23) f2, T2 f2 = f1 + a4(f2) f2
    out.t2_matrix = {{{0, 1}, {f1[4] + two23, f2[4]}}};
    mpz_class tr = f2[4];
    mpz_class c0 = f1[4] + two23;
    // λ² - tr λ - c0 = 0
    mpz_class disc = tr * tr + 4 * c0;
    auto [s, d] = split_square(disc);
    if (d == 1) throw NumericalError("T2 eigenvalues unexpectedly rational");
    for (int i = 0; i < 2; ++i) {
        QuadraticSurd lam{mpq_class(tr, 2), mpq_class(i == 0 ? s : mpz_class(-s), 2), d};
        lam.x.canonicalize();
        lam.y.canonicalize();
        out.lambda2[i] = lam;
        auto& a = out.a[i];
        a.resize(static_cast<size_t>(N) + 1);
        for (long n = 0; n <= N; ++n) {
            // f1 + λ f2
            a[n] = QuadraticSurd{mpq_class(f1[n]) + lam.x * f2[n], lam.y * f2[n], d};
        }
    }
    return out;
}

lmodel::CoefficientTable classical_table(const std::vector<mpz_class>& a, int k, long cutoff, mp::Bits bits) {
    if (static_cast<long>(a.size()) <= cutoff) throw InputError("not enough q-expansion terms for the cutoff");
    mp::ScopedBits g(bits);
    lmodel::CoefficientTable t(cutoff, 2);
    for (long n = 2; n <= cutoff; ++n) t.set_known_exact(n, mpq_class(a[n]));
    t.set_n_shift(mpq_class(-(k - 1), 2));
    t.materialize(bits);
    return t;
}

lmodel::CoefficientTable classical_table(const std::vector<QuadraticSurd>& a, int k, long cutoff, mp::Bits bits) {
    if (static_cast<long>(a.size()) <= cutoff) throw InputError("not enough q-expansion terms for the cutoff");
    mp::ScopedBits g(bits + 32);
    lmodel::CoefficientTable t(cutoff, 2);
    Real root_d = mp::sqrt(Real(a[1].d));
    Real w = Real(k - 1) / Real(2);
    for (long n = 2; n <= cutoff; ++n) {
        Real v = Real(a[n].x) + Real(a[n].y) * root_d;
        v /= mp::pow(Real(n), w);
        t.set_known(n, v.round_to(bits));
    }
    return t;
}

lmodel::LFunctionInstance delta_instance(long cutoff, mp::Bits bits) {
    auto d = delta_expansion(cutoff);
    return {"delta", lmodel::fe_classical(12), classical_table(d.coeffs, 12, cutoff, bits)};
}

lmodel::LFunctionInstance s24_instance(int which, long cutoff, mp::Bits bits) {
    if (which != 0 && which != 1) throw InputError("S24 eigenform index must be 0 or 1");
    auto ef = hecke_eigenforms_s24(cutoff);
    return {which == 0 ? "s24-f1" : "s24-f2", lmodel::fe_classical(24), classical_table(ef.a[which], 24, cutoff, bits)};
}

lmodel::LFunctionInstance power_lift(const lmodel::CoefficientTable& c, const lmodel::FunctionalEquation& fe, int m,
                                     long known_through, long cutoff, mp::Bits bits) {
    if (m < 1) throw InputError("power must be at least 1");
    if (c.degree() != fe.degree) throw InputError("table and functional equation degrees differ");
    if (m == 1) return {fe.label, fe, c};
    if (fe.degree > 2) throw InputError("power lift is implemented for degree 1 and 2");
    mp::ScopedBits g(bits);
    lmodel::RealFactors factors;
    for (long p = 2; p <= std::min(known_through, c.cutoff()); ++p) {
        if (!lmodel::is_prime(p) || c[p].kind != lmodel::CoefficientEntry::Kind::known) continue;
        std::vector<Real> q{Real(1), -c[p].value};
        if (fe.degree == 2) q.push_back(Real(1));
        std::vector<Real> pw{Real(1)};
        for (int i = 0; i < m; ++i) {
            std::vector<Real> nx(pw.size() + q.size() - 1, Real(0));
            for (size_t a = 0; a < pw.size(); ++a)
                for (size_t b = 0; b < q.size(); ++b) nx[a + b] += pw[a] * q[b];
            pw = nx;
        }
        factors[p] = pw;
    }
    auto table = lmodel::expand_euler(factors, cutoff, fe.degree * m, bits);
    auto lifted = fe.power(m);
    return {lifted.label, lifted, table};
}

}  // namespace fewcoef::forms
