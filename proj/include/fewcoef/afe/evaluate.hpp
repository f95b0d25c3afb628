#pragma once

#include "fewcoef/afe/plan.hpp"
#include "fewcoef/lmodel/instance.hpp"
#include "fewcoef/lmodel/test_function.hpp"
#include "fewcoef/numerics/mp.hpp"
#include "fewcoef/numerics/precision.hpp"

#include <map>
#include <string>
#include <vector>

namespace fewcoef::afe {

using lmodel::Symbol;

/// Geometric extrapolation of |δ_n| beyond the cutoff.
struct TailModel {
    double intercept = 0;  // log|δ_n| ≈ intercept + slope n
    double slope = 0;
    long fit_from = 0, fit_to = 0;
    double predicted_last = 0;  // model value at fit_to
    double actual_last = 0;     // |δ| at fit_to
    bool decaying = true;
};

/// One run of the approximate functional equation.
struct Evaluation {
    mp::Complex s;
    lmodel::TestFunction g;
    std::string instance_label;
    int degree = 1;
    long cutoff = 0;
    bool values_available = true;

    /// Z contribution of poles and known coefficients.
    mp::Real known_part;
    /// δ_n = Re K_n for n = 1..cutoff (index 0 unused); known n included.
    std::vector<mp::Real> delta;
    /// Σ over indices sharing an unknown symbol of (known scalar) · δ_n.
    std::map<Symbol, mp::Real> deltas;
    /// Ramanujan-weighted tail estimate beyond the cutoff.
    mp::Real tail_bound;
    TailModel tail;
    /// Bound on the arithmetic error of known_part: 2^-(working bits - 8) (1 + Σ|K_n b_n|).
    mp::Real rounding_bound;
    /// ε^(1/2) g(s) |γ(s)| / |...|: the rotation applied to Λ(s)g(s).
    mp::Complex z_normalizer_phase;

    /// Largest |Im K_n| / max |K_n| seen (zero for symmetric test functions).
    double kernel_imag_ratio = 0;
    /// Imaginary part of the known sum when every coefficient is known.
    mp::Real known_imag;
    /// Last n whose kernel was computed; later δ_n are below precision.
    long last_computed = 0;
    mp::Bits bits = 0;
    AfePlan plan;
};

struct EvaluateOptions {
    PlanOptions plan;
    /// Stop once |K_n| < 2^-(working bits + 8) for this many consecutive n.
    int stop_run = 20;
    /// Use the serial reference kernel.
    bool reference_kernel = false;
};

/// Evaluates Z(s) with each test function in `gs`, sharing one plan and node grid.
std::vector<Evaluation> evaluate_batch(const lmodel::LFunctionInstance& inst, const mp::Complex& s,
                                       const std::vector<lmodel::TestFunction>& gs, const PrecisionContext& ctx,
                                       const EvaluateOptions& opt = {});

Evaluation evaluate(const lmodel::LFunctionInstance& inst, const mp::Complex& s, const lmodel::TestFunction& g,
                    const PrecisionContext& ctx, const EvaluateOptions& opt = {});

/// f1(s, n) by direct adaptive quadrature (independent of the node grid).
mp::Complex f1(const mp::Complex& s, long n, const lmodel::TestFunction& g, const lmodel::FunctionalEquation& fe,
               const numerics::IntegrationPlan& plan, const PrecisionContext& ctx);
/// f2(1 - s, n); `s` is the original point.
mp::Complex f2(const mp::Complex& s, long n, const lmodel::TestFunction& g, const lmodel::FunctionalEquation& fe,
               const numerics::IntegrationPlan& plan, const PrecisionContext& ctx);

/// ε^(1/2) g(s) |γ(s)| with γ(s) = Q^s ∏Γ(κs+λ); Z = Λ(s)g(s) / this.
mp::Complex z_normalizer(const mp::Complex& s, const lmodel::TestFunction& g, const lmodel::FunctionalEquation& fe,
                         const PrecisionContext& ctx);

/// Z(s) from Λ(s)g(s). Throws NumericalError when the imaginary residue
/// exceeds 10^-(target_digits/2) relative, or when ε is not ±1.
mp::Real hardy_z(const mp::Complex& lambda_times_g, const mp::Complex& s, const lmodel::TestFunction& g,
                 const lmodel::FunctionalEquation& fe, const PrecisionContext& ctx);

/// Σ_q |deltas[q]| C Ram(q, d) + tail_bound.
mp::Real error_l1(const Evaluation& e, int d, const mp::Real& C);
/// Per-index form: Σ over unknown and partial n of |δ_n| · bound_n + tail,
/// bound_n = |scalar| C Ram(q, d) when values are available, else C Ram(n, d).
mp::Real error_l1_index(const Evaluation& e, const lmodel::CoefficientTable& table);

/// Fits log|δ_n| on [from, to] and sums the geometric continuation past `to`.
TailModel fit_tail(const std::vector<mp::Real>& delta, long from, long to);
mp::Real tail_estimate(const TailModel& m, long cutoff, const mp::Real& max_bound, mp::Bits bits);

}  // namespace fewcoef::afe
