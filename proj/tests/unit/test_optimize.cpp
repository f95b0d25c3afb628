#include <doctest.h>

#include "fewcoef/afe/evaluate.hpp"
#include "fewcoef/forms/forms.hpp"
#include "fewcoef/numerics/errors.hpp"
#include "fewcoef/optimize/least_squares.hpp"
#include "fewcoef/optimize/linear_program.hpp"
#include "fewcoef/optimize/simplex.hpp"

#include <random>

using namespace fewcoef;
using mp::Complex;
using mp::Real;
using lmodel::TestFunction;
using optimize::Grouping;

namespace {

/// ζ with Euler factors known for p <= 7.
lmodel::CoefficientTable zeta_partial(long cutoff) {
    lmodel::ExactFactors f;
    for (long p : {2L, 3L, 5L, 7L}) f[p] = {mpq_class(1), mpq_class(-1)};
    return lmodel::expand_euler(f, cutoff, 1);
}

/// Δ with Euler factors known for p <= 7.
lmodel::CoefficientTable delta_partial(long cutoff, mp::Bits bits) {
    auto tau = forms::delta_expansion(10);
    lmodel::ExactFactors f;
    for (long p : {2L, 3L, 5L, 7L}) {
        mpz_class p11;
        mpz_ui_pow_ui(p11.get_mpz_t(), static_cast<unsigned long>(p), 11);
        f[p] = {mpq_class(1), mpq_class(-tau.coeffs[p]), mpq_class(p11)};
    }
    return lmodel::expand_euler(f, cutoff, 2, mpq_class(-11, 2), bits);
}

std::vector<afe::Evaluation> run(const lmodel::LFunctionInstance& inst, const Complex& s,
                                 const std::vector<double>& betas, const PrecisionContext& ctx, double c = 0,
                                 double t0 = 0) {
    std::vector<TestFunction> gs;
    for (double b : betas) gs.push_back(TestFunction::beta(Real(b), Real(c), Real(t0)));
    return afe::evaluate_batch(inst, s, gs, ctx);
}

}  // namespace

TEST_CASE("simplex on small programs") {
    mp::ScopedBits g(128);
    optimize::LinearProgram lp;
    // maximize x + y: x + 2y <= 4, 3x + y <= 6, 0 <= x, y <= 10
    lp.A = {{Real(1), Real(2)}, {Real(3), Real(1)}};
    lp.b = {Real(4), Real(6)};
    lp.cost = {Real(-1), Real(-1)};
    lp.upper = {Real(10), Real(10)};
    auto r = optimize::solve_simplex(lp, 128);
    REQUIRE(r.feasible);
    CHECK(mp::abs(r.objective + Real(14) / 5L) < Real(1e-30));
    CHECK(mp::abs(r.y[0] - Real(8) / 5L) < Real(1e-30));
    CHECK(r.active[0]);
    CHECK(r.active[1]);

    // upper bounds bind: x <= 1
    lp.upper = {Real(1), Real(10)};
    r = optimize::solve_simplex(lp, 128);
    CHECK(mp::abs(r.objective + Real(2.5)) < Real(1e-30));

    // negative right-hand side needs phase one: x + y >= 2
    lp.A.push_back({Real(-1), Real(-1)});
    lp.b.push_back(Real(-2));
    lp.cost = {Real(1), Real(1)};
    lp.upper = {Real(10), Real(10)};
    r = optimize::solve_simplex(lp, 128);
    REQUIRE(r.feasible);
    CHECK(mp::abs(r.objective - Real(2)) < Real(1e-30));

    // x + y >= 20 cannot hold
    lp.b.back() = Real(-20);
    CHECK_FALSE(optimize::solve_simplex(lp, 128).feasible);
}

TEST_CASE("simplex agrees with brute force on random boxes") {
    mp::ScopedBits g(128);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        optimize::LinearProgram lp;
        const int n = 3;
        for (int i = 0; i < 4; ++i) {
            std::vector<Real> row;
            for (int j = 0; j < n; ++j) row.push_back(Real(coef(rng)));
            lp.A.push_back(row);
            lp.b.push_back(Real(coef(rng) + 3));
        }
        for (int j = 0; j < n; ++j) {
            lp.cost.push_back(Real(coef(rng)));
            lp.upper.push_back(Real(2));
        }
        auto r = optimize::solve_simplex(lp, 128);
        // brute force over a fine grid of the box
        double best = 1e300;
        const int steps = 40;
        for (int a = 0; a <= steps; ++a)
            for (int b = 0; b <= steps; ++b)
                for (int c = 0; c <= steps; ++c) {
                    double y[3] = {2.0 * a / steps, 2.0 * b / steps, 2.0 * c / steps};
                    bool ok = true;
                    for (size_t i = 0; i < lp.A.size() && ok; ++i) {
                        double s = 0;
                        for (int j = 0; j < n; ++j) s += lp.A[i][j].to_double() * y[j];
                        ok = s <= lp.b[i].to_double() + 1e-12;
                    }
                    if (!ok) continue;
                    double v = 0;
                    for (int j = 0; j < n; ++j) v += lp.cost[j].to_double() * y[j];
                    best = std::min(best, v);
                }
        if (best == 1e300) continue;
        REQUIRE(r.feasible);
        CHECK(r.objective.to_double() <= best + 1e-9);
        // the simplex optimum is feasible
        for (size_t i = 0; i < lp.A.size(); ++i) {
            Real s(0);
            for (int j = 0; j < n; ++j) s += lp.A[i][j] * r.y[j];
            CHECK(s <= lp.b[i] + Real(1e-30));
        }
    }
}

TEST_CASE("least squares weights") {
    auto ctx = PrecisionContext::for_digits(20);
    mp::ScopedBits g(ctx.working_bits);
    auto table = zeta_partial(80);
    lmodel::LFunctionInstance inst{"zeta", lmodel::fe_zeta(), table};
    Complex s(0.5, 14);
    auto evs = run(inst, s, {-0.4, 0.0, 0.3, 0.7}, ctx);

    for (auto grouping : {Grouping::per_index, Grouping::per_symbol}) {
        optimize::LsOptions o;
        o.grouping = grouping;
        auto w = optimize::ls_weights(evs, table, o);
        Real sum(0);
        for (const auto& c : w.c) sum += c;
        CHECK(mp::abs(sum - Real(1)) < Real(1e-40));

        // first-order optimality along directions keeping Σc = 1
        auto d = optimize::build_design(evs, table, grouping);
        std::mt19937_64 rng(3);
        std::normal_distribution<double> nd;
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> dir(w.c.size());
            double mean = 0;
            for (auto& x : dir) mean += (x = nd(rng));
            mean /= static_cast<double>(dir.size());
            for (double sign : {1.0, -1.0}) {
                std::vector<Real> c = w.c;
                for (size_t j = 0; j < c.size(); ++j) c[j] += Real(sign * 1e-6 * (dir[j] - mean));
                CHECK(optimize::ls_objective(d, c, 1000) >= w.objective);
            }
        }
        // the combination beats every single evaluation
        auto comb = optimize::combine(evs, w, table, o);
        for (const auto& e : evs) {
            Real single = grouping == Grouping::per_symbol ? afe::error_l1(e, 1, Real(1)) : afe::error_l1_index(e, table);
            CHECK(comb.l1_error <= single);
        }
    }
}

TEST_CASE("least squares degenerate inputs") {
    auto ctx = PrecisionContext::for_digits(20);
    mp::ScopedBits g(ctx.working_bits);
    auto table = zeta_partial(80);
    lmodel::LFunctionInstance inst{"zeta", lmodel::fe_zeta(), table};
    auto evs = run(inst, Complex(0.5, 14), {0.2, 0.2}, ctx);
    CHECK_THROWS_AS(optimize::ls_weights(evs, table), NumericalError);

    // an evaluation with no unknown terms takes all the weight
    auto more = run(inst, Complex(0.5, 14), {0.1, 0.5}, ctx);
    afe::Evaluation exact = more[0];
    for (auto& v : exact.delta) v = Real(0);
    for (auto& kv : exact.deltas) kv.second = Real(0);
    std::vector<afe::Evaluation> mix{more[1], exact, evs[0]};
    auto w = optimize::ls_weights(mix, table);
    CHECK(mp::abs(w.c[1] - Real(1)) < Real(1e-30));
    CHECK(mp::abs(w.c[0]) < Real(1e-30));

    // single evaluation: combine is the plain error
    optimize::WeightVector one;
    one.c = {Real(1)};
    std::vector<afe::Evaluation> single{more[0]};
    optimize::LsOptions sym;
    sym.grouping = Grouping::per_symbol;
    CHECK(mp::abs(optimize::combine(single, one, table, sym).l1_error - afe::error_l1(more[0], 1, Real(1))) <
          Real(1e-40));
    CHECK(mp::abs(optimize::combine(single, one, table).l1_error - afe::error_l1_index(more[0], table)) <
          Real(1e-40));
    CHECK(optimize::combine(single, one, table).value == more[0].known_part);
}

TEST_CASE("linear programming is sound on zeta and Delta") {
    auto ctx = PrecisionContext::for_digits(20);
    mp::ScopedBits g(ctx.working_bits);

    SUBCASE("zeta") {
        auto table = zeta_partial(80);
        lmodel::CoefficientTable full(80, 1);
        for (long n = 2; n <= 80; ++n) full.set_known_exact(n, 1);
        Complex s(0.5, 14);
        Real truth = afe::evaluate({"zeta", lmodel::fe_zeta(), full}, s, TestFunction{}, ctx).known_part;
        lmodel::LFunctionInstance inst{"zeta", lmodel::fe_zeta(), table};
        auto evs = run(inst, s, {0.0, -0.4, 0.3, 0.7, 0.75}, ctx);
        auto lp = optimize::lp_bounds(evs, table);
        CHECK(lp.min <= truth);
        CHECK(truth <= lp.max);
        // tighter than least squares when nothing beyond b_1 is known
        auto bare = lmodel::all_unknown_table(40, 1);
        auto bare_evs = run({"zeta", lmodel::fe_zeta(), bare}, s, {0.0, -0.4, 0.3, 0.7, 0.75}, ctx);
        auto bare_lp = optimize::lp_bounds(bare_evs, bare);
        optimize::LsOptions sym{Grouping::per_symbol, 1000, {}};
        auto w = optimize::ls_weights(bare_evs, bare, sym);
        auto comb = optimize::combine(bare_evs, w, bare, sym);
        CHECK(bare_lp.min <= truth);
        CHECK(truth <= bare_lp.max);
        CHECK(bare_lp.min >= comb.value - comb.l1_error - comb.rounding);
        CHECK(bare_lp.max <= comb.value + comb.l1_error + comb.rounding);
        CHECK(mp::abs(comb.value - truth) <= comb.l1_error + comb.rounding);
        // recovered b_11 contains 1
        auto rec = optimize::recover_coefficients(evs, table, {11, 13});
        CHECK(mp::abs(rec.at(11).midpoint - Real(1)) <= rec.at(11).halfwidth);
        CHECK(rec.at(11).halfwidth < Real(1));
        // fixing b_11 = 1 keeps the truth inside
        auto fixed = table.substitute({{11, Real(1)}});
        lmodel::LFunctionInstance inst2{"zeta", lmodel::fe_zeta(), fixed};
        auto evs2 = run(inst2, s, {0.0, -0.4, 0.3, 0.7, 0.75}, ctx);
        auto lp2 = optimize::lp_bounds(evs2, fixed);
        CHECK(lp2.min <= truth);
        CHECK(truth <= lp2.max);
        CHECK(lp2.max - lp2.min <= lp.max - lp.min);
        // a symbol that no column carries keeps its box
        auto box = optimize::lp_bounds(evs, table, lmodel::Symbol{1013});
        CHECK(box.max == Real(1));
        CHECK(box.min == Real(-1));
    }
    SUBCASE("Delta") {
        auto table = delta_partial(120, ctx.working_bits + 32);
        auto full = forms::delta_instance(120, ctx.working_bits + 32);
        Complex s(0.5, 6);
        Real truth = afe::evaluate(full, s, TestFunction{}, ctx).known_part;
        lmodel::LFunctionInstance inst{"delta", lmodel::fe_classical(12), table};
        auto evs = run(inst, s, {0.0, -0.5, 0.5, 1.0}, ctx);
        auto lp = optimize::lp_bounds(evs, table);
        CHECK(lp.min <= truth);
        CHECK(truth <= lp.max);
        CHECK(lp.max - lp.min < Real(0.1));
    }
}

TEST_CASE("linear programming with identical evaluations propagates the box") {
    auto ctx = PrecisionContext::for_digits(20);
    mp::ScopedBits g(ctx.working_bits);
    auto table = zeta_partial(80);
    lmodel::LFunctionInstance inst{"zeta", lmodel::fe_zeta(), table};
    auto evs = run(inst, Complex(0.5, 14), {0.3, 0.3}, ctx);
    auto lp = optimize::lp_bounds(evs, table);
    Real spread = afe::error_l1(evs[0], 1, Real(1));
    CHECK(mp::abs((lp.max - lp.min) / 2L - spread) < Real(1e-30) * (spread + Real(1)));
    CHECK(mp::abs((lp.max + lp.min) / 2L - evs[0].known_part) < Real(1e-30));

    auto pattern = table;
    pattern.set_values_available(false);
    CHECK_THROWS_AS(optimize::lp_bounds(evs, pattern), InputError);
}
