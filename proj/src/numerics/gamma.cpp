#include "fewcoef/numerics/gamma.hpp"

#include "fewcoef/numerics/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace fewcoef::numerics {

using mp::Bits;
using mp::Complex;
using mp::Real;

namespace {

std::mutex bernoulli_mutex;
std::vector<mpq_class> bernoulli_cache{mpq_class(1)};

/// B_{2m}/(2m(2m-1)) for m = 1..count at `bits`, cached per thread.
const std::vector<Real>& stirling_coefficients(Bits bits, size_t count) {
    thread_local std::map<Bits, std::vector<Real>> cache;
    auto& v = cache[bits];
    if (v.size() < count) {
        mp::ScopedBits g(bits);
        for (size_t m = v.size() + 1; m <= count; ++m) {
            mpq_class c = bernoulli(static_cast<int>(2 * m)) / mpq_class(static_cast<long>(2 * m * (2 * m - 1)));
            v.emplace_back(c);
        }
    }
    return v;
}

bool at_gamma_pole(const Complex& z) {
    if (!z.im.is_zero() && z.im.exponent2() > -static_cast<long>(z.bits()) + 4) return false;
    if (z.re.sign() > 0) return false;
    Real nearest = mp::floor(z.re + Real(0.5));
    Real gap = mp::abs(z.re - nearest);
    return gap.is_zero() || gap.exponent2() < -static_cast<long>(z.bits()) + 8 + std::max(0L, nearest.exponent2());
}

Complex sin_complex(const Complex& z) {
    // sin(x+iy) = sin x cosh y + i cos x sinh y
    Real s = Real::with_bits(z.bits()), c = Real::with_bits(z.bits());
    mp::sin_cos(s, c, z.re);
    Real ey = mp::exp(z.im);
    Real eyi = Real(1) / ey;
    Real ch = (ey + eyi) / 2L, sh = (ey - eyi) / 2L;
    return {s * ch, c * sh};
}

/// log Γ(w) for |w| large enough that Stirling's series converges to `bits`.
Complex stirling(const Complex& w, Bits bits) {
    Complex logw = mp::log(w);
    Real half_log_2pi = mp::log(2L * mp::pi(bits)) / 2L;
    Complex s = (w - Complex(0.5)) * logw - w + Complex(half_log_2pi);
    Complex r = mp::reciprocal(w);
    Complex r2 = r * r;
    Complex power = r;
    Real cutoff = mp::pow2(-static_cast<long>(bits) - 4, bits);
    Real last_mag = Real::with_bits(bits);
    size_t chunk = 32;
    for (size_t m = 1;; ++m) {
        const auto& coeffs = stirling_coefficients(bits, ((m - 1) / chunk + 1) * chunk);
        Complex term = power * coeffs[m - 1];
        Real mag = mp::abs(term.re) + mp::abs(term.im);
        s += term;
        if (mag < cutoff) break;
        if (m > 4 && mag > last_mag) break;  // past the smallest term of the asymptotic series
        if (m > 4000) break;
        last_mag = mag;
        power *= r2;
    }
    return s;
}

Complex log_gamma_right(const Complex& z, Bits bits) {
    // shift so that |z + N| >= R
    double R = std::max(20.0, static_cast<double>(bits) / 4.0);
    double x = z.re.to_double(), y = z.im.to_double();
    long shift = 0;
    if (x * x + y * y < R * R) {
        double need = std::sqrt(std::max(0.0, R * R - y * y)) - x;
        shift = static_cast<long>(std::ceil(std::max(0.0, need)));
    }
    if (shift == 0) return stirling(z, bits);
    Complex product = z;
    Complex w = z;
    double arg_sum = std::atan2(y, x);
    for (long k = 1; k < shift; ++k) {
        w.re += Real(1);
        product *= w;
        arg_sum += std::atan2(y, x + static_cast<double>(k));
    }
    w.re += Real(1);
    // principal branch of log Γ: log of the product taken as Σ log(z + k)
    Complex lp = mp::log(product);
    long turns = std::lround((arg_sum - lp.im.to_double()) / (2 * M_PI));
    if (turns != 0) lp.im += 2L * mp::pi(bits) * Real(turns);
    return stirling(w, bits) - lp;
}

}  // namespace

mpq_class bernoulli(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli index must be non-negative");
    if (n > 1 && n % 2 == 1) return mpq_class(0);
    std::lock_guard<std::mutex> lock(bernoulli_mutex);
    auto& B = bernoulli_cache;
    while (static_cast<int>(B.size()) <= n) {
        // B_m = -1/(m+1) * sum_{k<m} binom(m+1, k) B_k
        int m = static_cast<int>(B.size());
        if (m > 1 && m % 2 == 1) {
            B.emplace_back(0);
            continue;
        }
        mpq_class acc = 0;
        mpz_class binom = 1;  // binom(m+1, k)
        for (int k = 0; k < m; ++k) {
            acc += mpq_class(binom) * B[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        mpq_class bm = -acc / (m + 1);
        bm.canonicalize();
        B.push_back(bm);
    }
    return B[n];
}

Complex log_gamma(const Complex& z_in, const PrecisionContext& ctx) {
    Bits bits = ctx.working_bits + 32;
    mp::ScopedBits g(bits);
    Complex z = z_in;
    z.round_to(bits);
    if (at_gamma_pole(z)) throw GammaPoleError("gamma pole at " + z.re.str(20));
    Complex result;
    if (z.re < Real(0.5)) {
        // Γ(z) = π / (sin(πz) Γ(1-z))
        Real p = mp::pi(bits);
        Complex one_minus = Complex(Real(1) - z.re, -z.im);
        result = Complex(mp::log(p)) - mp::log(sin_complex(z * p)) - log_gamma_right(one_minus, bits);
    } else {
        result = log_gamma_right(z, bits);
    }
    result.round_to(ctx.working_bits);
    return result;
}

Complex complex_gamma(const Complex& z, const PrecisionContext& ctx) {
    PrecisionContext inner = ctx;
    inner.working_bits = ctx.working_bits + 16;
    Complex lg = log_gamma(z, inner);
    mp::ScopedBits g(inner.working_bits);
    Complex out = mp::exp(lg);
    out.round_to(ctx.working_bits);
    if (!out.re.is_finite() || !out.im.is_finite()) throw NumericalError("gamma overflow");
    return out;
}

std::complex<double> log_gamma_approx(std::complex<double> z) {
    using C = std::complex<double>;
    if (z.real() < 0.5) {
        const double pi = 3.14159265358979323846;
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma_approx(1.0 - z);
    }
    C acc = 0;
    while (std::abs(z) < 15.0) {
        acc += std::log(z);
        z += 1.0;
    }
    static const double c[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188, -691.0 / 360360};
    C r = 1.0 / z, r2 = r * r, s = 0, p = r;
    for (double ci : c) {
        s += ci * p;
        p *= r2;
    }
    return (z - 0.5) * std::log(z) - z + 0.9189385332046727418 + s - acc;
}

}  // namespace fewcoef::numerics
