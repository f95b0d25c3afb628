#include "fewcoef/afe/plan.hpp"

#include "fewcoef/numerics/errors.hpp"
#include "fewcoef/numerics/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace fewcoef::afe {

using cd = std::complex<double>;

namespace {

struct DoubleFe {
    double logQ;
    std::vector<double> kappa;
    std::vector<cd> lambda;
};

DoubleFe to_double(const lmodel::FunctionalEquation& fe) {
    DoubleFe d;
    d.logQ = fe.log_Q(64).to_double();
    for (const auto& g : fe.shifts) {
        d.kappa.push_back(g.kappa.get_d());
        d.lambda.emplace_back(g.lambda_re.get_d(), g.lambda_im.get_d());
    }
    return d;
}

double log_abs_gamma_factor(const DoubleFe& fe, cd w, bool dual) {
    double acc = w.real() * fe.logQ;
    for (size_t j = 0; j < fe.kappa.size(); ++j) {
        cd lam = dual ? std::conj(fe.lambda[j]) : fe.lambda[j];
        acc += numerics::log_gamma_approx(fe.kappa[j] * w + lam).real();
    }
    return acc;
}

struct DoubleG {
    double b, c, t0;
    double log_abs(cd w) const {
        cd i(0, 1);
        cd shifted = w - cd(0, t0);
        return (i * b * w + c * shifted * shifted).real();
    }
};

struct Profile {
    double peak = -std::numeric_limits<double>::infinity();  // max log|integrand| over both integrands
    double log_l1 = -std::numeric_limits<double>::infinity();  // log ∫|integrand| dt
    double half_width = 0;
};

double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log1p(std::exp(b - a));
}

/// Scans t = Im z outward until both integrands fall below `floor`.
Profile scan(const DoubleFe& fe, cd s, const DoubleG& g, double nu, double floor) {
    Profile p;
    const double dt = 1.0 / 16;
    auto value = [&](double t) {
        cd z(nu, t);
        double a = log_abs_gamma_factor(fe, s + z, false) + g.log_abs(s + z) - std::log(std::abs(z));
        double b = log_abs_gamma_factor(fe, 1.0 - s + z, true) + g.log_abs(s - z) - std::log(std::abs(z));
        return std::max(a, b);
    };
    for (int side : {1, -1}) {
        int below = 0;
        for (long k = (side == 1 ? 0 : 1); k < 2000000; ++k) {
            double t = side * dt * static_cast<double>(k);
            double v = value(t);
            p.peak = std::max(p.peak, v);
            p.log_l1 = log_add(p.log_l1, v + std::log(dt));
            if (v < floor && v < p.peak - 40) {
                if (++below > 32) {
                    p.half_width = std::max(p.half_width, std::abs(t));
                    break;
                }
            } else {
                below = 0;
            }
        }
    }
    return p;
}

}  // namespace

double nu_lower_bound(const lmodel::FunctionalEquation& fe, const mp::Complex& s) {
    double sr = s.re.to_double();
    double lower = 0;
    for (const auto& g : fe.shifts) {
        double r = g.lambda_re.get_d() / g.kappa.get_d();
        lower = std::max({lower, -(r + sr), -(r + 1 - sr)});
    }
    return lower;
}

AfePlan make_plan(const lmodel::FunctionalEquation& fe, const mp::Complex& s, const std::vector<lmodel::TestFunction>& gs,
                  const PrecisionContext& ctx, const PlanOptions& opt) {
    if (gs.empty()) throw InputError("no test functions to plan for");
    for (const auto& g : gs)
        if (!g.valid_for(fe.degree)) throw InputError("test function " + g.describe() + " is not admissible for degree " +
                                                      std::to_string(fe.degree));
    const DoubleFe dfe = to_double(fe);
    const cd sd(s.re.to_double(), s.im.to_double());
    std::vector<DoubleG> dgs;
    for (const auto& g : gs) dgs.push_back({g.b.to_double(), g.c.to_double(), g.t0.to_double()});

    const double lower = nu_lower_bound(fe, s);
    const double nu_default = std::max(1.0, lower + 0.5);
    std::vector<double> candidates;
    if (opt.nu) {
        if (*opt.nu <= lower) throw InputError("contour abscissa is left of a pole");
        candidates = {*opt.nu};
    } else {
        for (double v : {nu_default, 2.0, 4.0, 8.0, 16.0})
            if (v >= nu_default) candidates.push_back(v);
    }

    const double ln2 = std::log(2.0);
    AfePlan best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (double nu : candidates) {
        double bits = static_cast<double>(ctx.working_bits);
        double peak_rel = 0, width = 0, cancel = 0;
        for (int pass = 0; pass < 2; ++pass) {
            peak_rel = -std::numeric_limits<double>::infinity();
            width = 0;
            double l1 = -std::numeric_limits<double>::infinity();
            for (size_t i = 0; i < dgs.size(); ++i) {
                double log_norm = log_abs_gamma_factor(dfe, sd, false) + dgs[i].log_abs(sd);
                double floor = log_norm - (bits + 16) * ln2;
                Profile p = scan(dfe, sd, dgs[i], nu, floor);
                peak_rel = std::max(peak_rel, p.peak - log_norm);
                l1 = std::max(l1, p.log_l1 - log_norm);
                width = std::max(width, p.half_width);
            }
            // bits lost when the node sum is much larger than the result
            cancel = std::max(0.0, (l1 - std::log(2 * M_PI)) / ln2) + 8;
            bits = static_cast<double>(ctx.working_bits) + cancel + opt.extra_bits;
        }
        // trapezoid error ~ L1 on the lines ν ± a times e^(-2πa/h); a stays clear of every pole
        double a = 0.75 * (nu - std::max(0.0, lower));
        double shifted = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < dgs.size(); ++i) {
            double log_norm = log_abs_gamma_factor(dfe, sd, false) + dgs[i].log_abs(sd);
            double floor = log_norm - (bits + 16) * ln2;
            for (double line : {nu - a, nu + a}) {
                Profile p = scan(dfe, sd, dgs[i], line, floor);
                shifted = std::max(shifted, p.log_l1 - log_norm);
                width = std::max(width, p.half_width);
            }
        }
        double L = (ctx.working_bits + 16 + opt.extra_bits) * ln2 + std::max({0.0, peak_rel, shifted}) + 5;
        double h = opt.step ? *opt.step : 2 * M_PI * a / L;
        width *= opt.width_factor;
        width = std::max(width, 10 * h);
        long K = static_cast<long>(std::ceil(width / h));
        double cost = static_cast<double>(2 * K + 1) * std::pow(bits, 1.6);
        if (cost < best_cost) {
            best_cost = cost;
            mp::ScopedBits g(static_cast<mp::Bits>(bits));
            best.quad.nu = mp::Real(nu);
            best.quad.step = mp::Real(h);
            best.quad.half_width = mp::Real(h) * K;
            best.nodes_per_side = K;
            best.bits = static_cast<mp::Bits>(std::ceil(bits));
            best.cancellation_bits = cancel;
        }
    }
    return best;
}

}  // namespace fewcoef::afe
