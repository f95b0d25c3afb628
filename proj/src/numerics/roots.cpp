#include "fewcoef/numerics/roots.hpp"

#include "fewcoef/numerics/errors.hpp"

#include <cmath>

namespace fewcoef::numerics {

using mp::Complex;
using mp::Real;

Complex poly_eval(const std::vector<Complex>& coeffs, const Complex& x) {
    Complex acc = coeffs.back();
    for (size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

namespace {

Complex poly_deriv_eval(const std::vector<Complex>& coeffs, const Complex& x) {
    size_t n = coeffs.size() - 1;
    Complex acc = coeffs[n] * Real(static_cast<long>(n));
    for (size_t i = n - 1; i >= 1; --i) acc = acc * x + coeffs[i] * Real(static_cast<long>(i));
    return acc;
}

}  // namespace

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs_in, const PrecisionContext& ctx) {
    if (coeffs_in.size() < 2) throw std::invalid_argument("polynomial must have degree at least 1");
    if (coeffs_in.size() > 9) throw std::invalid_argument("poly_roots supports degree at most 8");
    const mp::Bits bits = ctx.working_bits + 16;
    mp::ScopedBits g(bits);
    if (coeffs_in.back().re.is_zero() && coeffs_in.back().im.is_zero())
        throw std::invalid_argument("leading coefficient is zero");

    // monic copy
    std::vector<Complex> c;
    for (const auto& a : coeffs_in) c.push_back(Complex(a).round_to(bits));
    Complex lead = c.back();
    for (auto& a : c) a /= lead;
    const size_t n = c.size() - 1;
    if (n == 1) return {-c[0]};

    // Cauchy-type radius for the starting circle
    double radius = 0;
    for (size_t i = 0; i < n; ++i)
        radius = std::max(radius, std::pow(mp::abs(c[i]).to_double(), 1.0 / static_cast<double>(n - i)));
    radius = std::max(radius, 1e-3);

    std::vector<Complex> z(n);
    for (size_t k = 0; k < n; ++k) {
        double th = 2 * 3.14159265358979323846 * (static_cast<double>(k) + 0.25) / static_cast<double>(n) + 0.4;
        z[k] = Complex(radius * std::cos(th), radius * std::sin(th));
    }

    Real norm_c = Real(0);
    for (const auto& a : coeffs_in) norm_c += mp::abs(a);
    const Real stop = mp::pow2(-static_cast<long>(bits) + 8, bits);
    const int max_iter = 50 + 4 * static_cast<int>(bits);
    for (int it = 0; it < max_iter; ++it) {
        Real largest_step = Real(0);
        for (size_t k = 0; k < n; ++k) {
            Complex p = poly_eval(c, z[k]);
            if (p.re.is_zero() && p.im.is_zero()) continue;
            Complex ratio = p / poly_deriv_eval(c, z[k]);
            Complex repulse(0);
            for (size_t j = 0; j < n; ++j)
                if (j != k) repulse += mp::reciprocal(z[k] - z[j]);
            Complex w = ratio / (Complex(1) - ratio * repulse);
            z[k] -= w;
            Real rel = mp::abs(w) / mp::max(mp::abs(z[k]), Real(1));
            if (rel > largest_step) largest_step = rel;
        }
        if (largest_step < stop) {
            for (auto& r : z) r.round_to(ctx.working_bits);
            return z;
        }
    }
    // accept if the residual test passes even without step convergence
    Real tol = mp::pow2(-static_cast<long>(ctx.working_bits) / 2, bits) * norm_c / mp::abs(lead);
    for (const auto& r : z)
        if (mp::abs(poly_eval(c, r)) > tol) throw NonConvergenceError("Aberth iteration did not converge");
    for (auto& r : z) r.round_to(ctx.working_bits);
    return z;
}

}  // namespace fewcoef::numerics
