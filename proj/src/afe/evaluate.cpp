#include "fewcoef/afe/evaluate.hpp"

#include "fewcoef/afe/kernel.hpp"
#include "fewcoef/numerics/errors.hpp"
#include "fewcoef/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace fewcoef::afe {

using mp::Complex;
using mp::Real;
using Kind = lmodel::CoefficientEntry::Kind;

namespace {

Complex sqrt_epsilon(const lmodel::FunctionalEquation& fe, mp::Bits bits) {
    mp::ScopedBits g(bits);
    if (!fe.real_sign()) throw InputError(fe.label + ": only epsilon = +1 or -1 is supported for Z");
    return fe.sign() > 0 ? Complex(1) : Complex(Real(0), Real(1));
}

Complex pole_sum(const lmodel::FunctionalEquation& fe, const Complex& s, const lmodel::TestFunction& g) {
    Complex acc(0);
    for (const auto& p : fe.poles) {
        Complex sk(Real(p.s_re), Real(p.s_im));
        Complex rk(Real(p.r_re), Real(p.r_im));
        Complex diff = s - sk;
        if (diff.re.is_zero() && diff.im.is_zero()) throw InputError("s is a pole of the completed L-function");
        acc += rk * g(sk) / diff;
    }
    return acc;
}

}  // namespace

Complex z_normalizer(const Complex& s, const lmodel::TestFunction& g, const lmodel::FunctionalEquation& fe,
                     const PrecisionContext& ctx) {
    mp::ScopedBits b(ctx.working_bits);
    Complex lg = fe.log_gamma_factor(s, ctx) + s * fe.log_Q(ctx.working_bits);
    Real mod = mp::exp(lg.re);
    return sqrt_epsilon(fe, ctx.working_bits) * g(s) * mod;
}

Real hardy_z(const Complex& lambda_times_g, const Complex& s, const lmodel::TestFunction& g,
             const lmodel::FunctionalEquation& fe, const PrecisionContext& ctx) {
    mp::ScopedBits b(ctx.working_bits);
    Complex z = lambda_times_g / z_normalizer(s, g, fe, ctx);
    Real tol = mp::pow(Real(10), -static_cast<long>(ctx.target_digits / 2));
    if (mp::abs(z.im) > tol * mp::max(mp::abs(z.re), Real(1)))
        throw NumericalError("Z has a non-negligible imaginary part " + z.im.str(6));
    return z.re;
}

Complex f1(const Complex& s, long n, const lmodel::TestFunction& g, const lmodel::FunctionalEquation& fe,
           const numerics::IntegrationPlan& plan, const PrecisionContext& ctx) {
    mp::ScopedBits b(ctx.working_bits);
    Real logx = fe.log_Q(ctx.working_bits) - mp::log(Real(n));
    auto f = [&](const Complex& z) {
        Complex w = s + z;
        return mp::exp(fe.log_gamma_factor(w, ctx) + z * logx) * g(w) / z;
    };
    return numerics::integrate_vertical(f, plan, ctx);
}

Complex f2(const Complex& s, long n, const lmodel::TestFunction& g, const lmodel::FunctionalEquation& fe,
           const numerics::IntegrationPlan& plan, const PrecisionContext& ctx) {
    mp::ScopedBits b(ctx.working_bits);
    Real logx = fe.log_Q(ctx.working_bits) - mp::log(Real(n));
    Complex one_minus_s(Real(1) - s.re, -s.im);
    auto f = [&](const Complex& z) {
        return mp::exp(fe.log_gamma_factor_dual(one_minus_s + z, ctx) + z * logx) * g(s - z) / z;
    };
    return numerics::integrate_vertical(f, plan, ctx);
}

TailModel fit_tail(const std::vector<Real>& delta, long from, long to) {
    TailModel m;
    m.fit_from = from;
    m.fit_to = to;
    if (to - from < 2) {
        m.decaying = false;
        return m;
    }
    // envelope: max |δ_m| for m >= n within the window
    std::vector<double> env(static_cast<size_t>(to - from + 1));
    double run = -INFINITY;
    for (long n = to; n >= from; --n) {
        const Real& d = delta[n];
        double v = d.is_zero() ? -INFINITY : std::log(std::abs(d.to_double())) ;
        if (!std::isfinite(v) && !d.is_zero()) v = static_cast<double>(d.exponent2()) * std::log(2.0);
        run = std::max(run, v);
        env[n - from] = run;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long count = 0;
    for (long n = from; n <= to; ++n) {
        double y = env[n - from];
        if (!std::isfinite(y)) continue;
        double x = static_cast<double>(n);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 3) {
        m.decaying = true;
        m.intercept = -INFINITY;
        m.slope = -1;
        return m;
    }
    double denom = count * sxx - sx * sx;
    m.slope = (count * sxy - sx * sy) / denom;
    m.intercept = (sy - m.slope * sx) / count;
    m.predicted_last = std::exp(m.intercept + m.slope * static_cast<double>(to));
    m.actual_last = std::exp(env.back());
    m.decaying = m.slope < 0;
    return m;
}

Real tail_estimate(const TailModel& m, long cutoff, const Real& max_bound, mp::Bits bits) {
    mp::ScopedBits g(bits);
    if (!m.decaying) return Real(INFINITY);
    if (!std::isfinite(m.intercept)) return Real(0);
    // 100 Σ_{n > cutoff} exp(a + b n) · bound
    Real a(m.intercept), b(m.slope);
    Real first = mp::exp(a + b * static_cast<long>(cutoff + 1));
    Real ratio = mp::exp(b);
    return first / (Real(1) - ratio) * max_bound * 100L;
}

std::vector<Evaluation> evaluate_batch(const lmodel::LFunctionInstance& inst, const Complex& s,
                                       const std::vector<lmodel::TestFunction>& gs, const PrecisionContext& ctx,
                                       const EvaluateOptions& opt) {
    inst.validate();
    const auto& fe = inst.fe;
    sqrt_epsilon(fe, ctx.working_bits);
    for (const auto& p : fe.poles)
        if (s.re == Real(p.s_re) && s.im == Real(p.s_im)) throw InputError("s is a pole of the completed L-function");

    AfePlan plan = make_plan(fe, s, gs, ctx, opt.plan);
    auto grid = node_grid(fe, s, plan);
    const mp::Bits bits = plan.bits;
    mp::ScopedBits guard(bits);
    PrecisionContext inner = ctx;
    inner.working_bits = bits;
    const long N = inst.coeffs.cutoff();
    const Complex eps = fe.epsilon(bits);
    const Real stop = mp::pow2(-static_cast<long>(ctx.working_bits) - 8, bits);

    // the known sum cancels by up to the plan's margin, so exact values are redone at plan bits
    lmodel::CoefficientTable local;
    const lmodel::CoefficientTable* tp = &inst.coeffs;
    for (long m = 1; m <= inst.coeffs.cutoff(); ++m) {
        const auto& entry = inst.coeffs[m];
        if (entry.has_exact && entry.kind != Kind::unknown && entry.value.bits() < bits) {
            local = inst.coeffs;
            local.materialize(bits);
            tp = &local;
            break;
        }
    }
    const auto& table = *tp;

    std::vector<Evaluation> out;
    for (const auto& g : gs) {
        Evaluation e;
        e.s = Complex(s).round_to(bits);
        e.g = g;
        e.instance_label = inst.label;
        e.degree = fe.degree;
        e.cutoff = N;
        e.values_available = table.values_available();
        e.bits = bits;
        e.plan = plan;
        e.delta.assign(static_cast<size_t>(N) + 1, Real(0));

        Complex norm = z_normalizer(s, g, fe, inner);
        e.z_normalizer_phase = norm / mp::abs(norm);
        Complex inv_norm = mp::reciprocal(norm);
        NodeWeights w = apply_test_function(*grid, g);

        std::vector<Complex> kernel(static_cast<size_t>(N) + 1, Complex(0));
        Real max_abs = Real(0), max_imag = Real(0);
        int run = 0;
        long n = 1;
        const long block = 32;
        while (n <= N && run < opt.stop_run) {
            long end = std::min(N + 1, n + block);
            TermBlock tb = opt.reference_kernel ? terms_reference(*grid, w, n, end) : terms_parallel(*grid, w, n, end);
            for (long m = n; m < end; ++m) {
                Complex K = (tb.T1[m - n] + eps * tb.T2[m - n]) * inv_norm;
                Real mag = mp::abs(K);
                if (mag > max_abs) max_abs = mag;
                if (mp::abs(K.im) > max_imag) max_imag = mp::abs(K.im);
                kernel[m] = K;
                e.last_computed = m;
                run = mag < stop ? run + 1 : 0;
                if (run >= opt.stop_run) break;
            }
            n = end;
        }
        e.kernel_imag_ratio = max_abs.is_zero() ? 0.0 : (max_imag / max_abs).to_double();

        Complex known = pole_sum(fe, s, g) * inv_norm;
        Real mass = mp::abs(known) + Real(1);
        Real coarse = Real(0);  // Σ |K_n b_n| 2^-precision(b_n) over values held below plan bits
        for (long m = 1; m <= e.last_computed; ++m) {
            e.delta[m] = kernel[m].re;
            const auto& entry = table[m];
            switch (entry.kind) {
                case Kind::known:
                    if (!entry.value.is_zero()) {
                        known += kernel[m] * entry.value;
                        Real term = mp::abs(kernel[m]) * mp::abs(entry.value);
                        if (entry.value.bits() < bits)
                            coarse += term * mp::pow2(-static_cast<long>(entry.value.bits()) + 1, bits);
                        mass += term;
                    }
                    break;
                case Kind::unknown: {
                    auto it = e.deltas.try_emplace(entry.symbol, Real(0)).first;
                    it->second += kernel[m].re;
                    break;
                }
                case Kind::partial: {
                    auto it = e.deltas.try_emplace(entry.symbol, Real(0)).first;
                    it->second += kernel[m].re * entry.value;
                    break;
                }
            }
        }
        // symbols whose kernels were all below precision still appear
        for (long m = e.last_computed + 1; m <= N; ++m)
            if (table[m].kind != Kind::known) e.deltas.try_emplace(table[m].symbol, Real(0));
        e.known_part = known.re;
        e.rounding_bound = mass * mp::pow2(-static_cast<long>(ctx.working_bits) + 8, bits) + coarse;
        e.known_imag = known.im;

        long to = e.last_computed;
        while (to > 1 && e.delta[to].is_zero()) --to;
        long from = std::max(1L, to - 199);
        e.tail = fit_tail(e.delta, from, to);
        Real max_bound = Real(0);
        for (long m = std::max(1L, N - 199); m <= N; ++m) max_bound = mp::max(max_bound, table.index_bound(m));
        e.tail_bound = tail_estimate(e.tail, N, max_bound, bits);
        out.push_back(std::move(e));
    }
    return out;
}

Evaluation evaluate(const lmodel::LFunctionInstance& inst, const Complex& s, const lmodel::TestFunction& g,
                    const PrecisionContext& ctx, const EvaluateOptions& opt) {
    return evaluate_batch(inst, s, {g}, ctx, opt).front();
}

Real error_l1(const Evaluation& e, int d, const Real& C) {
    mp::ScopedBits g(e.bits ? e.bits : mp::working_bits());
    Real acc = e.tail_bound;
    for (const auto& [q, v] : e.deltas) acc += mp::abs(v) * C * Real(lmodel::ramanujan_bound(static_cast<long>(q), d));
    return acc;
}

Real error_l1_index(const Evaluation& e, const lmodel::CoefficientTable& table) {
    mp::ScopedBits g(e.bits ? e.bits : mp::working_bits());
    Real acc = e.tail_bound;
    const long N = std::min(table.cutoff(), static_cast<long>(e.delta.size()) - 1);
    for (long n = 1; n <= N; ++n) {
        const auto& entry = table[n];
        if (entry.kind == Kind::known || e.delta[n].is_zero()) continue;
        Real bound;
        if (entry.kind == Kind::unknown)
            bound = table.symbol_bound(entry.symbol);
        else if (table.values_available())
            bound = mp::abs(entry.value) * table.symbol_bound(entry.symbol);
        else
            bound = table.index_bound(n);
        acc += mp::abs(e.delta[n]) * bound;
    }
    return acc;
}

}  // namespace fewcoef::afe
