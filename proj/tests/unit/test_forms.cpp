#include <doctest.h>

#include "fewcoef/forms/forms.hpp"
#include "fewcoef/numerics/errors.hpp"

using namespace fewcoef;
using namespace fewcoef::forms;
using mp::Real;
using Kind = lmodel::CoefficientEntry::Kind;

TEST_CASE("eisenstein series") {
    auto e4 = eisenstein(4, 2);
    REQUIRE(e4.coeffs.size() == 3);
    CHECK(e4[0] == 1);
    CHECK(e4[1] == 240);
    CHECK(e4[2] == 2160);
    auto e6 = eisenstein(6, 1);
    CHECK(e6[0] == 1);
    CHECK(e6[1] == -504);
    CHECK(eisenstein(4, 30)[0] == 1);
    CHECK_THROWS_AS(eisenstein(8, 3), InputError);
}

TEST_CASE("ramanujan tau") {
    auto d = delta_expansion(60);
    CHECK(d[0] == 0);
    CHECK(d[1] == 1);
    CHECK(d[2] == -24);
    CHECK(d[3] == 252);
    CHECK(d[6] == d[2] * d[3]);
    CHECK(d[4] == d[2] * d[2] - (mpz_class(1) << 11));
    for (long n = 1; n <= 50; ++n) {
        mpz_class diff = d[n] - divisor_sigma(n, 11);
        REQUIRE(mpz_divisible_ui_p(diff.get_mpz_t(), 691));
    }
}

TEST_CASE("weight 24 hecke eigenforms") {
    auto ef = hecke_eigenforms_s24(40);
    CHECK(ef.lambda2[0].d == 144169);
    CHECK(ef.lambda2[0].x == 540);
    CHECK(ef.lambda2[0].y == 12);
    CHECK(ef.lambda2[1].y == -12);
    // a_2 of the two eigenforms sum to the trace of the basis matrix
    CHECK(ef.a[0][2].x + ef.a[1][2].x == ef.t2_matrix[0][0] + ef.t2_matrix[1][1]);
    CHECK(ef.a[0][2].y + ef.a[1][2].y == 0);
    const mpz_class two23 = mpz_class(1) << 23;
    for (int i = 0; i < 2; ++i) {
        const auto& a = ef.a[i];
        // a_4 = a_2² - 2^23 in Q(√d)
        mpq_class sx = a[2].x * a[2].x + a[2].y * a[2].y * a[2].d - two23;
        mpq_class sy = 2 * a[2].x * a[2].y;
        CHECK(a[4].x == sx);
        CHECK(a[4].y == sy);
        // multiplicativity a_6 = a_2 a_3
        CHECK(a[6].x == a[2].x * a[3].x + a[2].y * a[3].y * a[2].d);
        CHECK(a[6].y == a[2].x * a[3].y + a[2].y * a[3].x);
    }
    // T3 on the basis: T3 f1 = a3(f1) f1 + a6(f1) f2, T3 f2 = a3(f2) f1 + a6(f2) f2
    mpz_class m00 = ef.f1[3], m10 = ef.f1[6], m01 = ef.f2[3], m11 = ef.f2[6];
    mpz_class tr = m00 + m11, det = m00 * m11 - m01 * m10;
    mp::ScopedBits g(256);
    for (int i = 0; i < 2; ++i) {
        Real mu = ef.a[i][3].value(256);
        Real r = mu * mu - Real(tr) * mu + Real(det);
        CHECK(mp::abs(r) < mp::pow2(-150) * mu * mu);
    }
}

TEST_CASE("normalized b_2 of the weight 24 eigenforms") {
    mp::ScopedBits g(256);
    auto inst = s24_instance(0, 10, 256);
    Real want = (Real(540) + Real(12) * mp::sqrt(Real(144169))) / mp::pow(Real(2), Real(23) / Real(2));
    CHECK(mp::abs(inst.coeffs[2].value - want) < mp::pow2(-240));
    CHECK(inst.fe.degree == 2);
    CHECK(mp::abs(inst.coeffs[2].value) <= Real(2));
}

TEST_CASE("power lift") {
    mp::ScopedBits g(200);
    // ζ² has b_n = d(n)
    lmodel::CoefficientTable ones(50, 1);
    for (long n = 2; n <= 50; ++n) ones.set_known(n, Real(1));
    lmodel::FunctionalEquation fake = lmodel::fe_zeta();
    fake.poles.clear();
    auto z1 = power_lift(ones, fake, 1, 50, 50, 200);
    CHECK(z1.coeffs[4].value == Real(1));
    auto sq = power_lift(ones, fake, 2, 50, 50, 200);
    CHECK(sq.coeffs[4].value == Real(3));
    CHECK(sq.coeffs[12].value == Real(6));
    CHECK(sq.fe.degree == 2);

    // f^5 against naive fivefold Dirichlet convolution
    auto f = s24_instance(0, 60, 200);
    auto f5 = power_lift(f.coeffs, f.fe, 5, 79, 60, 200);
    CHECK(f5.fe.degree == 10);
    std::vector<Real> b(61, Real(0)), acc(61, Real(0));
    for (long n = 1; n <= 60; ++n) b[n] = f.coeffs[n].value;
    acc[1] = Real(1);
    for (int r = 0; r < 5; ++r) {
        std::vector<Real> nx(61, Real(0));
        for (long m = 1; m <= 60; ++m)
            for (long k = 1; m * k <= 60; ++k) nx[m * k] += acc[m] * b[k];
        acc = nx;
    }
    for (long n = 1; n <= 60; ++n) REQUIRE(mp::abs(f5.coeffs[n].value - acc[n]) < mp::pow2(-150));

    auto cut = power_lift(f.coeffs, f.fe, 5, 7, 60, 200);
    CHECK(cut.coeffs[11].kind == Kind::unknown);
    CHECK(cut.coeffs[22].kind == Kind::partial);
    CHECK(cut.coeffs.symbol_bound(11) == Real(10));
}
