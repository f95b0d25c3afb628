#pragma once

#include "fewcoef/numerics/mp.hpp"
#include "fewcoef/numerics/precision.hpp"

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

namespace fewcoef::lmodel {

/// Γ(κ s + λ) with κ in {1/2, 1}.
struct GammaShift {
    mpq_class kappa;
    mpq_class lambda_re;
    mpq_class lambda_im;

    bool operator==(const GammaShift&) const = default;
};

/// Simple pole of Λ at s with residue r.
struct Pole {
    mpq_class s_re, s_im;
    mpq_class r_re, r_im;

    bool operator==(const Pole&) const = default;
};

/// Λ(s) = Q^s ∏ Γ(κ_j s + λ_j) L(s) = ε conj(Λ(1 - conj s)).
///
/// Q is kept as q_rational · π^q_pi_power so that files round-trip exactly.
struct FunctionalEquation {
    std::string label;
    int degree = 1;
    mpq_class q_rational = 1;
    mpq_class q_pi_power = 0;
    std::vector<GammaShift> shifts;
    mpq_class epsilon_re = 1;
    mpq_class epsilon_im = 0;
    std::vector<Pole> poles;

    /// Throws InputError describing the first violated invariant.
    void validate() const;

    mp::Real Q(mp::Bits bits) const;
    mp::Real log_Q(mp::Bits bits) const;
    mp::Complex epsilon(mp::Bits bits) const;
    /// ε is ±1.
    bool real_sign() const { return epsilon_im == 0 && (epsilon_re == 1 || epsilon_re == -1); }
    int sign() const { return epsilon_re > 0 ? 1 : -1; }

    /// log ∏ Γ(κ_j s + λ_j), up to multiples of 2πi.
    mp::Complex log_gamma_factor(const mp::Complex& s, const PrecisionContext& ctx) const;
    /// Same product at the dual parameters: ∏ Γ(κ_j s + conj λ_j).
    mp::Complex log_gamma_factor_dual(const mp::Complex& s, const PrecisionContext& ctx) const;

    /// Q^m, every shift repeated m times, ε^m. Poles are not supported.
    FunctionalEquation power(int m) const;

    std::string to_text() const;
    static FunctionalEquation from_text(const std::string& text);

    bool operator==(const FunctionalEquation&) const = default;
};

std::ostream& operator<<(std::ostream& os, const FunctionalEquation& fe);

enum class Rho { spin, stan, adj };

Rho parse_rho(const std::string& name);
const char* rho_name(Rho rho);

/// Unfolded functional equation of the spin, standard or adjoint L-function
/// of a Siegel cusp form of even weight k >= 10.
FunctionalEquation fe_for(Rho rho, int k);

/// Λ(s) = Γ_C(s + (k-1)/2) L(s), level 1 weight k; ε = i^k.
FunctionalEquation fe_classical(int k);

/// Riemann ζ: Q = π^{-1/2}, Γ(s/2), poles at 1 and 0.
FunctionalEquation fe_zeta();

}  // namespace fewcoef::lmodel
