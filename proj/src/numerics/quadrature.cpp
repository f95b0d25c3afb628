#include "fewcoef/numerics/quadrature.hpp"

#include "fewcoef/numerics/errors.hpp"

#include <cmath>
#include <string>

namespace fewcoef::numerics {

using mp::Complex;
using mp::Real;

bool IntegrationPlan::valid() const {
    if (!(nu.sign() > 0) || !(step.sign() > 0) || !(half_width.sign() > 0)) return false;
    return half_width / step >= Real(10);
}

long IntegrationPlan::nodes_per_side() const {
    return static_cast<long>(std::ceil((half_width / step).to_double() - 1e-9));
}

QuadratureResult integrate_vertical_ex(const VerticalIntegrand& f, const IntegrationPlan& plan,
                                       const PrecisionContext& ctx) {
    if (!plan.valid()) throw std::invalid_argument("integration plan needs nu > 0, step > 0, half_width >= 10 step");
    const mp::Bits bits = ctx.working_bits;
    mp::ScopedBits g(bits);
    const Real nu = Real(plan.nu).round_to(bits);
    const Real h = Real(plan.step).round_to(bits);

    auto node = [&](long k) { return Complex(nu, h * k); };

    Complex sum = f(node(0));
    long K = plan.nodes_per_side();
    Real last = Real::with_bits(bits);
    for (long k = 1; k <= K; ++k) {
        Complex a = f(node(k));
        Complex b = f(node(-k));
        last = mp::max(mp::abs(a), mp::abs(b));
        sum += a;
        sum += b;
    }
    const long cap = 16 * K;
    const Real fine = mp::pow2(-static_cast<long>(bits) - 8, bits);
    long k = K;
    while (k < cap && last > fine * mp::abs(sum)) {
        ++k;
        Complex a = f(node(k));
        Complex b = f(node(-k));
        last = mp::max(mp::abs(a), mp::abs(b));
        sum += a;
        sum += b;
    }
    if (last > mp::pow2(-static_cast<long>(bits) / 2, bits) * mp::abs(sum))
        throw NonConvergenceError("vertical integral tail not negligible at half width " +
                                  (h * k).str(8));
    QuadratureResult out;
    out.value = sum * (h / (2L * mp::pi(bits)));
    out.half_width = h * k;
    out.nodes = 2 * k + 1;
    return out;
}

Real quadrature_tolerance(const PrecisionContext& ctx) {
    return mp::pow2(-static_cast<long>(ctx.working_bits) + 24, ctx.working_bits);
}

}  // namespace fewcoef::numerics
