#include "fewcoef/afe/kernel.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include <omp.h>

namespace fewcoef::afe {

using mp::Complex;
using mp::Real;

Complex NodeGrid::node(long k) const { return {Real(nu), h * k}; }

namespace {

std::mutex cache_mutex;
std::map<std::string, std::shared_ptr<const NodeGrid>> cache;

std::string cache_key(const lmodel::FunctionalEquation& fe, const Complex& s, const AfePlan& plan) {
    std::ostringstream os;
    os << fe.to_text() << '|' << s.re.str(60) << ',' << s.im.str(60) << '|' << plan.quad.nu.str(40) << '|'
       << plan.quad.step.str(40) << '|' << plan.bits;
    return os.str();
}

/// Real λ and Re s = 1/2 make the dual grid the reflected conjugate.
bool self_dual(const lmodel::FunctionalEquation& fe, const Complex& s) {
    for (const auto& g : fe.shifts)
        if (g.lambda_im != 0) return false;
    return s.re == Real(0.5);
}

}  // namespace

std::shared_ptr<const NodeGrid> node_grid(const lmodel::FunctionalEquation& fe, const Complex& s, const AfePlan& plan) {
    const std::string key = cache_key(fe, s, plan);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end() && it->second->K >= plan.nodes_per_side) return it->second;
    }
    const mp::Bits bits = plan.bits;
    mp::ScopedBits g(bits);
    auto grid = std::make_shared<NodeGrid>();
    grid->s = Complex(s).round_to(bits);
    grid->nu = Real(plan.quad.nu).round_to(bits);
    grid->h = Real(plan.quad.step).round_to(bits);
    grid->K = plan.nodes_per_side;
    grid->bits = bits;
    const long K = grid->K;
    const long count = 2 * K + 1;
    grid->base1.assign(count, Complex(0));
    grid->base2.assign(count, Complex(0));

    PrecisionContext ctx;
    ctx.working_bits = bits;
    const Real logQ = fe.log_Q(bits);
    const Real scale = grid->h / (2L * mp::pi(bits));
    const bool dual = self_dual(fe, s);
    const Complex one_minus_s = Complex(Real(1) - grid->s.re, -grid->s.im);

#pragma omp parallel
    {
        mp::ScopedBits tg(bits);
#pragma omp for schedule(dynamic, 16)
        for (long idx = 0; idx < count; ++idx) {
            Complex z = grid->node(idx - K);
            Complex w = grid->s + z;
            Complex lg = fe.log_gamma_factor(w, ctx) + w * logQ;
            grid->base1[idx] = mp::exp(lg) * scale / z;
            if (!dual) {
                Complex w2 = one_minus_s + z;
                Complex lg2 = fe.log_gamma_factor_dual(w2, ctx) + w2 * logQ;
                grid->base2[idx] = mp::exp(lg2) * scale / z;
            }
        }
    }
    if (dual)
        for (long idx = 0; idx < count; ++idx) grid->base2[idx] = mp::conj(grid->base1[count - 1 - idx]);

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[key] = grid;
    return grid;
}

void clear_grid_cache() {
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.clear();
}

NodeWeights apply_test_function(const NodeGrid& grid, const lmodel::TestFunction& g) {
    const long count = 2 * grid.K + 1;
    NodeWeights w;
    w.A.assign(count, Complex(0));
    w.B.assign(count, Complex(0));
#pragma omp parallel
    {
        mp::ScopedBits tg(grid.bits);
#pragma omp for schedule(static)
        for (long idx = 0; idx < count; ++idx) {
            Complex z = grid.node(idx - grid.K);
            w.A[idx] = grid.base1[idx] * g(grid.s + z);
            w.B[idx] = grid.base2[idx] * g(grid.s - z);
        }
    }
    return w;
}

namespace {

/// Σ_{k=-K}^{K} c_k ω^k with ω on the unit circle.
Complex horner(const std::vector<Complex>& c, const Complex& omega, const Complex& omega_minus_K) {
    Complex acc = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
        acc *= omega;
        acc += c[i];
    }
    return acc * omega_minus_K;
}

}  // namespace

TermBlock terms_parallel(const NodeGrid& grid, const NodeWeights& w, long n_begin, long n_end) {
    const long count = n_end - n_begin;
    TermBlock out;
    out.T1.assign(count, Complex(0));
    out.T2.assign(count, Complex(0));
#pragma omp parallel
    {
        mp::ScopedBits tg(grid.bits);
        const Complex one_minus_s(Real(1) - grid.s.re, -grid.s.im);
#pragma omp for schedule(dynamic, 1)
        for (long i = 0; i < count; ++i) {
            const long n = n_begin + i;
            Real ln = mp::log(Real(n));
            Real angle = grid.h * ln;
            Real sn = Real::with_bits(grid.bits), cs = Real::with_bits(grid.bits);
            mp::sin_cos(sn, cs, angle);
            Complex omega(cs, -sn);
            Real angle_k = angle * grid.K;
            mp::sin_cos(sn, cs, angle_k);
            Complex omega_minus_K(cs, sn);
            // n^-(s+ν) and n^-(1-s+ν)
            Complex p1 = mp::exp(-(grid.s + Complex(grid.nu)) * ln);
            Complex p2 = mp::exp(-(one_minus_s + Complex(grid.nu)) * ln);
            out.T1[i] = p1 * horner(w.A, omega, omega_minus_K);
            out.T2[i] = p2 * horner(w.B, omega, omega_minus_K);
        }
    }
    return out;
}

TermBlock terms_reference(const NodeGrid& grid, const NodeWeights& w, long n_begin, long n_end) {
    mp::ScopedBits tg(grid.bits);
    const long count = n_end - n_begin;
    TermBlock out;
    const Complex one_minus_s(Real(1) - grid.s.re, -grid.s.im);
    for (long i = 0; i < count; ++i) {
        const long n = n_begin + i;
        Real ln = mp::log(Real(n));
        Complex t1(0), t2(0);
        for (long k = -grid.K; k <= grid.K; ++k) {
            Complex z = grid.node(k);
            t1 += w.A[k + grid.K] * mp::exp(-(grid.s + z) * ln);
            t2 += w.B[k + grid.K] * mp::exp(-(one_minus_s + z) * ln);
        }
        out.T1.push_back(t1);
        out.T2.push_back(t2);
    }
    return out;
}

}  // namespace fewcoef::afe
