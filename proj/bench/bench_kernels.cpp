// Times the OpenMP term kernel against the serial reference on one plan.
//
// Usage: bench_kernels [digits] [terms]
#include "fewcoef/afe/kernel.hpp"
#include "fewcoef/lmodel/functional_equation.hpp"
#include "fewcoef/numerics/precision.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

using namespace fewcoef;

namespace {

template <class F>
double time_of(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int digits = argc > 1 ? std::atoi(argv[1]) : 30;
    long terms = argc > 2 ? std::atol(argv[2]) : 200;
    auto ctx = PrecisionContext::for_digits(digits);
    mp::ScopedBits guard(ctx.working_bits);
    auto fe = lmodel::fe_for(lmodel::Rho::stan, 20);
    mp::Complex s(mp::Real(1) / 2L, mp::Real(10));
    auto g = lmodel::TestFunction::beta(mp::Real(3) / 2L);
    auto plan = afe::make_plan(fe, s, {g}, ctx);
    mp::ScopedBits plan_bits(plan.bits);
    auto grid = afe::node_grid(fe, s, plan);
    auto w = afe::apply_test_function(*grid, g);

    afe::TermBlock ref, par;
    double t_ref = time_of([&] { ref = afe::terms_reference(*grid, w, 1, terms + 1); });
    double t_par = time_of([&] { par = afe::terms_parallel(*grid, w, 1, terms + 1); });
    mp::Real worst = 0;
    for (long j = 0; j < terms; ++j) {
        mp::Real scale = mp::max(mp::abs(ref.T1[j]), mp::Real(1e-300));
        worst = mp::max(worst, mp::abs(par.T1[j] - ref.T1[j]) / scale);
        worst = mp::max(worst, mp::abs(par.T2[j] - ref.T2[j]) / mp::max(mp::abs(ref.T2[j]), mp::Real(1e-300)));
    }
    std::printf("degree 5, %d digits, %ld bits, %ld nodes per side, n = 1..%ld, %d threads\n", digits,
                static_cast<long>(plan.bits), plan.nodes_per_side, terms, omp_get_max_threads());
    std::printf("reference %.3f s\nparallel  %.3f s\nspeedup   %.2f\nmax relative difference %s\n", t_ref, t_par,
                t_ref / t_par, worst.str(3).c_str());
    return 0;
}
