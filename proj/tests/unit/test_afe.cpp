#include <doctest.h>

#include "fewcoef/afe/evaluate.hpp"
#include "fewcoef/afe/kernel.hpp"
#include "fewcoef/forms/forms.hpp"
#include "fewcoef/numerics/errors.hpp"
#include "fewcoef/numerics/gamma.hpp"
#include "fewcoef/satake/satake.hpp"

using namespace fewcoef;
using mp::Complex;
using mp::Real;
using lmodel::TestFunction;

namespace {

lmodel::LFunctionInstance zeta_instance(long cutoff) {
    lmodel::CoefficientTable t(cutoff, 1);
    for (long n = 2; n <= cutoff; ++n) t.set_known_exact(n, 1);
    return {"zeta", lmodel::fe_zeta(), t};
}

/// ζ(s) by Euler-Maclaurin with M terms and `terms` Bernoulli corrections.
Complex zeta_em(const Complex& s, long M, int terms) {
    Complex acc(0);
    for (long n = 1; n < M; ++n) acc += mp::pow(Real(n), -s);
    Real Mr(M);
    Complex Ms = mp::pow(Mr, -s);
    acc += Ms * Mr / (s - Complex(1));
    acc += Ms / Real(2);
    Complex rising = s;  // s (s+1) ... (s+2k-2)
    Complex powM = Ms / Mr;
    mpz_class fact = 2;
    for (int k = 1; k <= terms; ++k) {
        acc += rising * powM * Real(numerics::bernoulli(2 * k)) / Real(fact);
        rising = rising * (s + Complex(2 * k - 1)) * (s + Complex(2 * k));
        powM = powM / (Mr * Mr);
        fact *= (2 * k + 1) * (2 * k + 2);
    }
    return acc;
}

PrecisionContext ctx_digits(int d) { return PrecisionContext::for_digits(d); }

}  // namespace

TEST_CASE("zeta at the center") {
    auto ctx = ctx_digits(30);
    mp::ScopedBits g(ctx.working_bits);
    auto e = afe::evaluate(zeta_instance(40), Complex(0.5), TestFunction{}, ctx);
    Real want = Real::parse("-1.46035450880958681288949915251529801246722933101");
    CHECK(mp::abs(e.known_part - want) < Real(1e-28));
    CHECK(e.known_part.sign() < 0);
}

TEST_CASE("zeta first zero and euler-maclaurin oracle") {
    auto ctx = ctx_digits(30);
    mp::ScopedBits g(ctx.working_bits);
    auto inst = zeta_instance(40);
    auto e = afe::evaluate(inst, Complex(0.5, 14.134725), TestFunction{}, ctx);
    CHECK(mp::abs(e.known_part) < Real(1e-5));

    Complex s(0.5, 10);
    auto e10 = afe::evaluate(inst, s, TestFunction{}, ctx);
    Complex zeta = zeta_em(s, 40, 30);
    // Z = (γ(s)/|γ(s)|) ζ(s) for ε = 1
    PrecisionContext c = ctx;
    Complex lg = inst.fe.log_gamma_factor(s, c) + s * inst.fe.log_Q(ctx.working_bits);
    Complex phase = mp::exp(Complex(Real(0), lg.im));
    Complex z = phase * zeta;
    CHECK(mp::abs(z.im) < Real(1e-28));
    CHECK(mp::abs(z.re - e10.known_part) < Real(1e-28));
}

TEST_CASE("test function independence on zeta") {
    auto ctx = ctx_digits(30);
    mp::ScopedBits g(ctx.working_bits);
    auto inst = zeta_instance(60);
    Complex s(0.5, 20);
    auto a = afe::evaluate(inst, s, TestFunction{}, ctx);
    auto b = afe::evaluate(inst, s, TestFunction::beta(Real(0.25)), ctx);
    auto c = afe::evaluate(inst, s, TestFunction::beta(Real(-0.5), Real(0.01), Real(20)), ctx);
    Real tol = mp::pow(Real(10), -static_cast<long>(ctx.target_digits - 3));
    CHECK(mp::abs(a.known_part - b.known_part) < tol);
    CHECK(mp::abs(a.known_part - c.known_part) < tol);
    CHECK(mp::abs(c.known_imag) < tol);
}

TEST_CASE("f1 for zeta is the incomplete gamma function") {
    auto ctx = ctx_digits(25);
    const mp::Bits hi = ctx.working_bits + 64;
    mp::ScopedBits g(hi);
    auto fe = lmodel::fe_zeta();
    Complex s(0.5, 10);
    numerics::IntegrationPlan plan;
    plan.nu = 1;
    plan.step = Real(1) / 16;
    plan.half_width = 40;
    PrecisionContext hctx = ctx;
    hctx.working_bits = hi;
    for (long n : {1L, 2L}) {
        Complex got = afe::f1(s, n, TestFunction{}, fe, plan, hctx);
        // Γ(a, X) = Γ(a) - X^a e^-X Σ X^k / (a (a+1) ... (a+k)), a = s/2, X = π n²
        Complex a = s / Real(2);
        Real X = mp::pi() * Real(n * n);
        Complex term = mp::reciprocal(a), sum(0);
        for (int k = 0; k < 400; ++k) {
            sum += term;
            term = term * X / (a + Complex(k + 1));
        }
        Complex lower = mp::pow(X, a) * mp::exp(-X) * sum;
        Complex want = numerics::complex_gamma(a, hctx) - lower;
        CHECK(mp::abs(got - want) < mp::pow2(-static_cast<long>(ctx.working_bits)) * (mp::abs(want) + Real(1)));
    }
    // decay in n
    Real prev = Real(1e300);
    for (long n = 1; n <= 4; ++n) {
        Real m = mp::abs(afe::f1(s, n, TestFunction{}, fe, plan, hctx));
        CHECK(m < prev);
        prev = m;
    }
}

TEST_CASE("node kernel against direct quadrature of f1 and f2") {
    auto ctx = ctx_digits(25);
    mp::ScopedBits g(ctx.working_bits);
    auto fe = lmodel::fe_for(lmodel::Rho::stan, 20);
    Complex s(0.5, 10);
    TestFunction tf = TestFunction::beta(Real(0.3));
    auto plan = afe::make_plan(fe, s, {tf}, ctx);
    auto grid = afe::node_grid(fe, s, plan);
    auto w = afe::apply_test_function(*grid, tf);
    auto fast = afe::terms_parallel(*grid, w, 1, 9);
    auto ref = afe::terms_reference(*grid, w, 1, 9);
    PrecisionContext hctx = ctx;
    hctx.working_bits = plan.bits;
    mp::ScopedBits hb(plan.bits);
    Real logQ = fe.log_Q(plan.bits);
    Real l1(0);
    for (size_t k = 0; k < w.A.size(); ++k) l1 += mp::abs(w.A[k]) + mp::abs(w.B[k]);
    for (long n = 1; n <= 8; ++n) {
        Real scale = l1 * mp::pow(Real(n), -(grid->nu + Real(0.5)));
        Real tol = mp::pow2(-static_cast<long>(plan.bits) + 16) * scale;
        CHECK(mp::abs(fast.T1[n - 1] - ref.T1[n - 1]) < tol);
        CHECK(mp::abs(fast.T2[n - 1] - ref.T2[n - 1]) < tol);
        if (n <= 3) {
            Real ln = mp::log(Real(n));
            Complex direct1 = mp::exp(s * (logQ - ln)) * afe::f1(s, n, tf, fe, plan.quad, hctx);
            Complex oms(Real(1) - s.re, -s.im);
            Complex direct2 = mp::exp(oms * (logQ - ln)) * afe::f2(s, n, tf, fe, plan.quad, hctx);
            CHECK(mp::abs(direct1 - fast.T1[n - 1]) < tol);
            CHECK(mp::abs(direct2 - fast.T2[n - 1]) < tol);
        }
    }
}

TEST_CASE("halving the step leaves the kernel unchanged") {
    auto ctx = ctx_digits(25);
    mp::ScopedBits g(ctx.working_bits);
    auto fe = lmodel::fe_for(lmodel::Rho::stan, 20);
    Complex s(0.5, 10);
    lmodel::LFunctionInstance inst{"stan", fe, satake::pattern_table(lmodel::Rho::stan, 79, 200)};
    auto tf = TestFunction::beta(Real(0.5));
    auto a = afe::evaluate(inst, s, tf, ctx);
    afe::EvaluateOptions opt;
    opt.plan.nu = a.plan.quad.nu.to_double();
    opt.plan.step = a.plan.quad.step.to_double() / 2;
    opt.plan.width_factor = 1.5;
    auto b = afe::evaluate(inst, s, tf, ctx, opt);
    Real tol = numerics::quadrature_tolerance(ctx) * mp::abs(a.delta[1]);
    for (long n = 1; n <= 200; ++n) REQUIRE(mp::abs(a.delta[n] - b.delta[n]) < tol);
}

TEST_CASE("evaluation is affine in the coefficients") {
    auto ctx = ctx_digits(25);
    mp::ScopedBits g(ctx.working_bits);
    auto fe = lmodel::fe_classical(12);
    lmodel::CoefficientTable t(300, 2);
    for (long n = 2; n <= 300; ++n) {
        if (n == 7 || n == 11)
            t.set_unknown(n, n);
        else
            t.set_known(n, Real(1) / Real(n));
    }
    lmodel::LFunctionInstance inst{"lin", fe, t};
    Complex s(0.5, 5);
    auto tf = TestFunction::beta(Real(0.2));
    auto e = afe::evaluate(inst, s, tf, ctx);
    REQUIRE(e.deltas.size() == 2);
    Real v(0.75);
    lmodel::LFunctionInstance filled{"lin", fe, t.substitute({{7, v}})};
    auto f = afe::evaluate(filled, s, tf, ctx);
    CHECK(f.deltas.size() == 1);
    CHECK(mp::abs(f.known_part - (e.known_part + e.deltas.at(7) * v)) < Real(1e-35));
}

TEST_CASE("hardy z and normalizer") {
    auto ctx = ctx_digits(25);
    mp::ScopedBits g(ctx.working_bits);
    auto fe = lmodel::fe_classical(12);
    Complex s(0.5, 3);
    Complex n = afe::z_normalizer(s, TestFunction{}, fe, ctx);
    CHECK(mp::abs(afe::hardy_z(n * Real(2), s, TestFunction{}, fe, ctx) - Real(2)) < Real(1e-30));
    CHECK_THROWS_AS(afe::hardy_z(n * Complex(1, 1), s, TestFunction{}, fe, ctx), NumericalError);
    auto odd = fe;
    odd.epsilon_re = -1;
    Complex m = afe::z_normalizer(s, TestFunction{}, odd, ctx);
    CHECK(mp::abs(m.re) < Real(1e-30));  // ε^(1/2) = i
    auto bad = fe;
    bad.epsilon_re = 0;
    bad.epsilon_im = 1;
    CHECK_THROWS_AS(afe::z_normalizer(s, TestFunction{}, bad, ctx), InputError);
}

TEST_CASE("error l1 and tail model") {
    afe::Evaluation e;
    e.tail_bound = 0;
    CHECK(afe::error_l1(e, 5, Real(1)) == Real(0));
    e.deltas[7] = Real(2);
    CHECK(afe::error_l1(e, 5, Real(1)) == Real(10));

    std::vector<Real> d(301, Real(0));
    for (long n = 1; n <= 300; ++n) d[n] = mp::exp(Real(-0.1) * Real(n)) * Real(n % 2 ? 1 : -1);
    auto m = afe::fit_tail(d, 101, 300);
    CHECK(m.decaying);
    CHECK(std::abs(m.slope + 0.1) < 1e-6);
    CHECK(m.predicted_last < 10 * m.actual_last);
    CHECK(m.predicted_last > 0.1 * m.actual_last);
    Real tail = afe::tail_estimate(m, 300, Real(1), 128);
    Real exact = mp::exp(Real(-0.1) * Real(301)) / (Real(1) - mp::exp(Real(-0.1)));
    CHECK(mp::abs(tail / exact - Real(100)) < Real(1e-3));
}

TEST_CASE("tail model is self consistent on a real evaluation") {
    auto ctx = ctx_digits(25);
    mp::ScopedBits g(ctx.working_bits);
    lmodel::LFunctionInstance inst{"stan", lmodel::fe_for(lmodel::Rho::stan, 20),
                                   satake::pattern_table(lmodel::Rho::stan, 79, 400)};
    auto e = afe::evaluate(inst, Complex(0.5, 10), TestFunction::beta(Real(1.5)), ctx);
    CHECK(e.tail.decaying);
    CHECK(e.tail.predicted_last < 10 * e.tail.actual_last);
    CHECK(e.tail.predicted_last > 0.1 * e.tail.actual_last);
    CHECK(e.tail_bound.sign() >= 0);
}

TEST_CASE("cancellation does not depend on the table precision") {
    auto ctx = ctx_digits(30);
    mp::ScopedBits g(ctx.working_bits);
    Complex s(Real(1) / 2, Real(100));
    auto coarse = forms::delta_instance(150, 40);
    auto flat = afe::evaluate(coarse, s, TestFunction{}, ctx);
    auto tilted = afe::evaluate(coarse, s, TestFunction::beta(Real(0.5)), ctx);
    CHECK(mp::abs(flat.known_part - tilted.known_part) < Real(1e-28));

    // inexact values: the rounding bound grows with the cancellation
    auto plain = forms::delta_instance(150, 100);
    for (long n = 1; n <= 150; ++n) plain.coeffs.set_known(n, plain.coeffs[n].value);
    auto rough = afe::evaluate(plain, s, TestFunction{}, ctx);
    CHECK(mp::abs(rough.known_part - tilted.known_part) <= rough.rounding_bound + tilted.rounding_bound);
    CHECK(rough.rounding_bound > Real(1e-20));
}

TEST_CASE("invalid inputs") {
    auto ctx = ctx_digits(20);
    auto inst = zeta_instance(20);
    CHECK_THROWS_AS(afe::evaluate(inst, Complex(1), TestFunction{}, ctx), InputError);
    CHECK_THROWS_AS(afe::evaluate(inst, Complex(0.5, 1), TestFunction::beta(Real(1)), ctx), InputError);
}
