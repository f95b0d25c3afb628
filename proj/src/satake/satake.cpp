#include "fewcoef/satake/satake.hpp"

#include "fewcoef/numerics/errors.hpp"
#include "fewcoef/numerics/roots.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fewcoef::satake {

using mp::Complex;
using mp::Real;

mpz_class HeckeDatum::P() const {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(2 * k - 3));
    return out;
}

mpz_class HeckeDatum::A() const {
    mpz_class P_ = P();
    return lambda_p * lambda_p - lambda_p2 - 2 * P_ - P_ / p;
}

mpz_class HeckeDatum::B() const { return lambda_p * lambda_p - 4 * P() - 2 * A(); }

std::vector<std::array<Complex, 3>> SatakeTriple::weyl_orbit() const {
    // roots of the normalized spin quartic and their pairing
    Complex ua = alpha0, ub = alpha0 * alpha1, uc = alpha0 * alpha2, ud = alpha0 * alpha1 * alpha2;
    std::array<std::array<Complex, 4>, 4> orders = {{{ua, ub, uc, ud}, {ud, ub, uc, ua}, {ub, ua, ud, uc}, {uc, ua, ud, ub}}};
    std::vector<std::array<Complex, 3>> out;
    for (const auto& o : orders) {
        const Complex& a0 = o[0];
        out.push_back({a0, o[1] / a0, o[2] / a0});
        out.push_back({a0, o[2] / a0, o[1] / a0});
    }
    return out;
}

SatakeTriple solve_satake(const HeckeDatum& h, const PrecisionContext& ctx) {
    if (!lmodel::is_prime(h.p)) throw InputError("Hecke datum at non-prime " + std::to_string(h.p));
    if (h.k % 2 != 0) throw InputError("weight must be even");
    const mp::Bits bits = ctx.working_bits + 32;
    mp::ScopedBits g(bits);
    PrecisionContext inner = ctx;
    inner.working_bits = bits;

    mpz_class P = h.P();
    Real rootP = mp::sqrt(Real(P));
    Real e1 = Real(h.lambda_p) / rootP;
    Real e2 = Real(mpz_class(h.A() + 2 * P)) / Real(P);
    // u^4 - e1 u^3 + e2 u^2 - e1 u + 1
    std::vector<Complex> coeffs{Complex(1), Complex(-e1), Complex(e2), Complex(-e1), Complex(1)};
    auto roots = numerics::poly_roots(coeffs, inner);
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) { return mp::arg(a) < mp::arg(b); });

    // choose the perfect matching with products closest to 1
    const int matchings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    int best = -1;
    Real best_err = Real(0), second_err = Real(0);
    for (int m = 0; m < 3; ++m) {
        const auto& mm = matchings[m];
        Real err = mp::abs(roots[mm[0]] * roots[mm[1]] - Complex(1)) + mp::abs(roots[mm[2]] * roots[mm[3]] - Complex(1));
        if (best < 0 || err < best_err) {
            if (best >= 0) second_err = best_err;
            best = m;
            best_err = err;
        } else if (m == 1 || err < second_err) {
            second_err = err;
        }
    }
    Real tol = mp::pow2(-static_cast<long>(ctx.working_bits) / 2, bits);
    if (best_err > tol) throw NumericalError("no pairing of spin roots multiplies to p^(2k-3)");
    const auto& mm = matchings[best];
    // α0 = first root, partner = α0α1α2, the other pair = {α0α1, α0α2}
    Complex ua = roots[mm[0]], ud = roots[mm[1]], ub = roots[mm[2]], uc = roots[mm[3]];
    (void)ud;
    SatakeTriple t;
    t.alpha0 = ua;
    t.alpha1 = ub / ua;
    t.alpha2 = uc / ua;

    Real unit_tol = mp::pow2(-static_cast<long>(ctx.working_bits) / 2, bits);
    for (const auto* a : {&t.alpha0, &t.alpha1, &t.alpha2})
        if (mp::abs(mp::abs(*a) - Real(1)) > unit_tol) t.unitary = false;
    if (!t.unitary)
        std::cerr << "warning: Satake parameters at p=" << h.p << " violate the Ramanujan bound\n";

    auto [lp, lp2] = reconstruct_eigenvalues(t, h.p, h.k, inner);
    Real scale = Real(mpz_class(h.lambda_p * h.lambda_p)) + Real(P);
    Real resid = mp::abs(lp - Complex(Real(h.lambda_p))) * mp::abs(lp + Complex(Real(h.lambda_p))) +
                 mp::abs(lp2 - Complex(Real(h.lambda_p2)));
    if (resid > tol * scale) throw NumericalError("Satake round trip mismatch at p=" + std::to_string(h.p));

    for (auto* a : {&t.alpha0, &t.alpha1, &t.alpha2}) a->round_to(ctx.working_bits);
    return t;
}

std::pair<Complex, Complex> reconstruct_eigenvalues(const SatakeTriple& t, long p, int k, const PrecisionContext& ctx) {
    mp::ScopedBits g(ctx.working_bits);
    mpz_class Pz;
    mpz_ui_pow_ui(Pz.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(2 * k - 3));
    Real P(Pz);
    Complex one(1);
    Complex lam = t.alpha0 * (one + t.alpha1) * (one + t.alpha2) * mp::sqrt(P);
    Complex a1 = t.alpha1 + mp::reciprocal(t.alpha1), a2 = t.alpha2 + mp::reciprocal(t.alpha2);
    Complex sigma = a1 + a2, tau = a1 * a2;
    Complex lam2 = (Complex(Real(2) - Real(1) / Real(p)) + sigma + tau) * P;
    return {lam, lam2};
}

namespace {

std::vector<Complex> expand_roots(const std::vector<Complex>& inverse_roots) {
    // ∏ (1 - r X)
    std::vector<Complex> c{Complex(1)};
    for (const auto& r : inverse_roots) {
        c.emplace_back(0);
        for (size_t j = c.size() - 1; j >= 1; --j) c[j] -= c[j - 1] * r;
    }
    return c;
}

}  // namespace

std::vector<Real> local_factor(const SatakeTriple& t, Rho rho, const PrecisionContext& ctx) {
    mp::ScopedBits g(ctx.working_bits + 16);
    Complex one(1);
    const Complex& a0 = t.alpha0;
    const Complex &a1 = t.alpha1, &a2 = t.alpha2;
    Complex i1 = mp::reciprocal(a1), i2 = mp::reciprocal(a2);
    std::vector<Complex> r;
    switch (rho) {
        case Rho::spin: r = {a0, a0 * a1, a0 * a2, a0 * a1 * a2}; break;
        case Rho::stan: r = {one, a1, i1, a2, i2}; break;
        case Rho::adj: r = {one, one, a1, i1, a2, i2, a1 * a2, i1 * a2, a1 * i2, i1 * i2}; break;
    }
    auto c = expand_roots(r);
    Real tol = mp::pow2(-static_cast<long>(ctx.working_bits) / 2);
    std::vector<Real> out;
    for (auto& z : c) {
        if (mp::abs(z.im) > tol * (mp::abs(z.re) + Real(1)))
            throw NumericalError(std::string("local factor for ") + lmodel::rho_name(rho) + " is not real");
        out.push_back(z.re.round_to(ctx.working_bits));
    }
    return out;
}

std::vector<mpq_class> exact_local_factor(const HeckeDatum& h, Rho rho) {
    mpz_class P = h.P();
    if (rho == Rho::spin) {
        mpz_class e1 = h.lambda_p, e2 = h.A() + 2 * P;
        return {1, mpq_class(-e1), mpq_class(e2), mpq_class(-e1 * P), mpq_class(P * P)};
    }
    mpq_class sigma(h.A(), P), tau(h.B(), P);
    sigma.canonicalize();
    tau.canonicalize();
    // 1 - σX + (2 + τ)X² - σX³ + X⁴
    std::vector<mpq_class> quartic{1, -sigma, 2 + tau, -sigma, 1};
    auto mul = [](const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
        std::vector<mpq_class> c(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        return c;
    };
    std::vector<mpq_class> one_minus{1, -1};
    if (rho == Rho::stan) return mul(one_minus, quartic);
    mpq_class c = sigma * sigma - 2 * tau - 4;
    std::vector<mpq_class> second{1, -tau, 2 + c, -tau, 1};
    return mul(mul(mul(one_minus, one_minus), quartic), second);
}

std::vector<HeckeDatum> parse_hecke_table(const std::string& text, int k) {
    std::vector<HeckeDatum> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string a, b, c, extra;
        if (!(ls >> a)) continue;
        if (!(ls >> b >> c) || (ls >> extra))
            throw InputError("Hecke table line " + std::to_string(lineno) + ": expected p, lambda_p, lambda_p2");
        HeckeDatum d;
        d.k = k;
        try {
            d.p = std::stol(a);
            d.lambda_p = mpz_class(b);
            d.lambda_p2 = mpz_class(c);
        } catch (const std::exception&) {
            throw InputError("Hecke table line " + std::to_string(lineno) + ": non-integer field");
        }
        if (!lmodel::is_prime(d.p)) throw InputError("Hecke table line " + std::to_string(lineno) + ": p is not prime");
        out.push_back(d);
    }
    return out;
}

std::vector<HeckeDatum> read_hecke_table(const std::string& path, int k) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open Hecke table " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_hecke_table(ss.str(), k);
}

lmodel::CoefficientTable coefficients_from_hecke(const std::vector<HeckeDatum>& data, Rho rho, long cutoff,
                                                 mp::Bits bits) {
    lmodel::ExactFactors f;
    int k = data.empty() ? 20 : data.front().k;
    for (const auto& d : data) f[d.p] = exact_local_factor(d, rho);
    int degree = rho == Rho::spin ? 4 : (rho == Rho::stan ? 5 : 10);
    mpq_class shift = rho == Rho::spin ? mpq_class(-(2 * k - 3), 2) : mpq_class(0);
    return lmodel::expand_euler(f, cutoff, degree, shift, bits);
}

lmodel::CoefficientTable pattern_table(Rho rho, long known_through, long cutoff) {
    int degree = rho == Rho::spin ? 4 : (rho == Rho::stan ? 5 : 10);
    lmodel::ExactFactors f;
    for (long p = 2; p <= known_through; ++p)
        if (lmodel::is_prime(p)) f[p] = {1};
    auto t = lmodel::expand_euler(f, cutoff, degree);
    for (long n = 2; n <= cutoff; ++n) {
        auto& e = t.at(n);
        e.value = Real(0);
        e.has_exact = false;
    }
    t.set_values_available(false);
    return t;
}

}  // namespace fewcoef::satake
