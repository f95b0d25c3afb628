#include <doctest.h>

#include "fewcoef/numerics/errors.hpp"
#include "fewcoef/numerics/gamma.hpp"
#include "fewcoef/numerics/quadrature.hpp"
#include "fewcoef/numerics/roots.hpp"

#include <random>

using namespace fewcoef;
using mp::Complex;
using mp::Real;

namespace {

PrecisionContext ctx256() {
    PrecisionContext c;
    c.working_bits = 256;
    c.target_digits = 50;
    return c;
}

Real rel_err(const Complex& a, const Complex& b) { return mp::abs(a - b) / mp::abs(b); }

}  // namespace

TEST_CASE("bernoulli numbers") {
    CHECK(numerics::bernoulli(0) == 1);
    CHECK(numerics::bernoulli(1) == mpq_class(-1, 2));
    CHECK(numerics::bernoulli(2) == mpq_class(1, 6));
    CHECK(numerics::bernoulli(12) == mpq_class(-691, 2730));
    CHECK(numerics::bernoulli(13) == 0);
}

TEST_CASE("gamma known values") {
    auto ctx = ctx256();
    mp::ScopedBits g(ctx.working_bits);
    Complex one = numerics::complex_gamma(Complex(1), ctx);
    CHECK(mp::abs(one - Complex(1)) < mp::pow2(-250));
    Complex half = numerics::complex_gamma(Complex(0.5), ctx);
    CHECK(rel_err(half, Complex(mp::sqrt(mp::pi()))) < mp::pow2(-248));
    Complex f10 = numerics::complex_gamma(Complex(11), ctx);
    CHECK(rel_err(f10, Complex(Real(3628800))) < mp::pow2(-248));
    Complex neg = numerics::complex_gamma(Complex(-0.5), ctx);
    CHECK(rel_err(neg, Complex(Real(-2) * mp::sqrt(mp::pi()))) < mp::pow2(-246));
}

TEST_CASE("gamma poles raise") {
    auto ctx = ctx256();
    CHECK_THROWS_AS(numerics::complex_gamma(Complex(0), ctx), GammaPoleError);
    CHECK_THROWS_AS(numerics::complex_gamma(Complex(-3), ctx), GammaPoleError);
}

TEST_CASE("gamma recurrence at 3+4i against a large-shift product") {
    auto ctx = ctx256();
    mp::ScopedBits g(ctx.working_bits);
    Complex z(3, 4);
    Complex g3 = numerics::complex_gamma(z, ctx);
    Complex g4 = numerics::complex_gamma(z + Complex(1), ctx);
    CHECK(rel_err(g4, z * g3) < mp::pow2(-246));
    // Γ(z) = Γ(z+200) / (z (z+1) ... (z+199))
    Complex big = numerics::complex_gamma(z + Complex(200), ctx);
    Complex prod(1);
    for (int k = 0; k < 200; ++k) prod *= z + Complex(k);
    CHECK(rel_err(big / prod, g3) < mp::pow2(-240));
}

TEST_CASE("gamma recurrence and reflection on random box") {
    auto ctx = ctx256();
    mp::ScopedBits g(ctx.working_bits);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-20, 20), im(-60, 60);
    for (int trial = 0; trial < 1000; ++trial) {
        Complex z(re(rng), im(rng));
        if (std::abs(z.im.to_double()) < 1e-3) continue;
        Complex gz = numerics::complex_gamma(z, ctx);
        Complex gz1 = numerics::complex_gamma(z + Complex(1), ctx);
        REQUIRE(rel_err(gz1, z * gz) < mp::pow2(-256 + 8));
        if (trial % 10 == 0) {
            Complex g1z = numerics::complex_gamma(Complex(1) - z, ctx);
            Complex pz = z * mp::pi();
            Complex s = (mp::exp(mp::i_times(pz)) - mp::exp(-mp::i_times(pz))) / Complex(0, 2);
            Complex lhs = gz * g1z * s / Complex(mp::pi());
            REQUIRE(mp::abs(lhs - Complex(1)) < mp::pow2(-256 + 16));
        }
    }
}

TEST_CASE("log gamma follows the principal branch") {
    auto ctx = ctx256();
    mp::ScopedBits g(ctx.working_bits);
    PrecisionContext lo = ctx;
    lo.working_bits = 120;
    for (double x : {0.75, 4.25, 26.5, 27.5}) {
        for (double y : {-40.0, 5.0, 10.0, 33.0}) {
            Complex z(x, y);
            Complex a = numerics::log_gamma(z, ctx);
            Complex b = numerics::log_gamma(z + Complex(1), ctx);
            CHECK(mp::abs(b - a - mp::log(z)) < mp::pow2(-240));
            CHECK(mp::abs(numerics::log_gamma(z, lo) - a) < mp::pow2(-110));
        }
    }
}

TEST_CASE("Cahen-Mellin integral") {
    auto ctx = ctx256();
    mp::ScopedBits g(ctx.working_bits);
    Real two(2);
    auto f = [&](const Complex& z) { return numerics::complex_gamma(z, ctx) * mp::pow(two, z); };
    numerics::IntegrationPlan plan;
    plan.nu = 2;
    plan.step = Real(1) / 16;
    plan.half_width = 20;
    auto r = numerics::integrate_vertical_ex(f, plan, ctx);
    Complex want(mp::exp(Real(-0.5)));
    CHECK(mp::abs(r.value - want) < mp::pow2(-240));

    numerics::IntegrationPlan finer = plan;
    finer.step = plan.step / 2L;
    finer.half_width = r.half_width * 2L;
    Complex v2 = numerics::integrate_vertical(f, finer, ctx);
    CHECK(mp::abs(v2 - r.value) < numerics::quadrature_tolerance(ctx));
}

TEST_CASE("theta-type integral against over-resolved quadrature") {
    PrecisionContext ctx;
    ctx.working_bits = 160;
    ctx.target_digits = 25;
    mp::ScopedBits g(ctx.working_bits);
    Real pi = mp::pi();
    Real ten(10);
    auto f = [&](const Complex& z) {
        return numerics::complex_gamma(z / Real(2), ctx) * mp::pow(pi, -z / Real(2)) * mp::pow(ten, z) /
               z;
    };
    numerics::IntegrationPlan plan;
    plan.nu = 2;
    plan.step = Real(1) / 8;
    plan.half_width = 10;
    auto r = numerics::integrate_vertical_ex(f, plan, ctx);
    numerics::IntegrationPlan over = plan;
    over.step = plan.step / 4L;
    over.half_width = r.half_width * 4L;
    Complex v = numerics::integrate_vertical(f, over, ctx);
    CHECK(mp::abs(v - r.value) < numerics::quadrature_tolerance(ctx) * mp::abs(v));
}

TEST_CASE("quadrature rejects bad plans and slow decay") {
    auto ctx = ctx256();
    numerics::IntegrationPlan plan;
    plan.step = 1;
    plan.half_width = 5;
    auto f = [](const Complex& z) { return mp::reciprocal(z * z); };
    CHECK_THROWS_AS(numerics::integrate_vertical(f, plan, ctx), std::invalid_argument);
    plan.step = Real(1) / 4;
    CHECK_THROWS_AS(numerics::integrate_vertical(f, plan, ctx), NonConvergenceError);
}

TEST_CASE("poly roots") {
    auto ctx = ctx256();
    mp::ScopedBits g(ctx.working_bits);
    auto r = numerics::poly_roots({Complex(-1), Complex(0), Complex(1)}, ctx);
    REQUIRE(r.size() == 2);
    Real a = mp::abs(r[0] - Complex(1)) + mp::abs(r[1] + Complex(1));
    Real b = mp::abs(r[0] + Complex(1)) + mp::abs(r[1] - Complex(1));
    CHECK(mp::min(a, b) < mp::pow2(-200));

    auto q = numerics::poly_roots({Complex(2), Complex(-2), Complex(1)}, ctx);
    REQUIRE(q.size() == 2);
    for (const auto& z : q) {
        CHECK(mp::abs(z.re - Real(1)) < mp::pow2(-200));
        CHECK(mp::abs(mp::abs(z.im) - Real(1)) < mp::pow2(-200));
    }
}

TEST_CASE("poly roots reproduce elementary symmetric functions") {
    auto ctx = ctx256();
    mp::ScopedBits g(ctx.working_bits);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int deg = 2; deg <= 8; ++deg) {
        std::vector<Complex> c;
        for (int i = 0; i < deg; ++i) c.emplace_back(u(rng), u(rng));
        c.emplace_back(1);
        auto roots = numerics::poly_roots(c, ctx);
        std::vector<Complex> e(deg + 1, Complex(0));
        e[0] = Complex(1);
        for (const auto& z : roots)
            for (int j = deg; j >= 1; --j) e[j] = e[j] + e[j - 1] * z;
        for (int j = 1; j <= deg; ++j) {
            Complex want = c[deg - j];
            if (j % 2 == 1) want = -want;
            CHECK(mp::abs(e[j] - want) < mp::pow2(-128) * (mp::abs(want) + Real(1)));
        }
    }
}
