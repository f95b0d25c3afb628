#pragma once

#include "fewcoef/lmodel/coefficients.hpp"
#include "fewcoef/lmodel/functional_equation.hpp"
#include "fewcoef/numerics/mp.hpp"
#include "fewcoef/numerics/precision.hpp"

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

namespace fewcoef::satake {

using lmodel::Rho;

/// Hecke eigenvalues λ(p), λ(p²) of a Siegel eigenform of weight k.
struct HeckeDatum {
    long p = 2;
    mpz_class lambda_p;
    mpz_class lambda_p2;
    int k = 20;

    /// p^(2k-3).
    mpz_class P() const;
    /// A = λ(p)² - λ(p²) - (2 + 1/p) P, exact.
    mpz_class A() const;
    /// B = λ(p)² - 4P - 2A.
    mpz_class B() const;
};

/// Satake parameters in the analytic normalization α0² α1 α2 = 1.
struct SatakeTriple {
    mp::Complex alpha0, alpha1, alpha2;
    /// All |α_j| = 1 to tolerance.
    bool unitary = true;

    /// The 8 relabelings that leave every local factor unchanged.
    std::vector<std::array<mp::Complex, 3>> weyl_orbit() const;
};

/// Solves the spin quartic and pairs its roots into (α0, α1, α2).
/// Throws NumericalError on pairing ambiguity or if the round trip through
/// λ(p), λ(p²) fails.
SatakeTriple solve_satake(const HeckeDatum& h, const PrecisionContext& ctx);

/// λ(p) and λ(p²) rebuilt from a triple (p^(2k-3) restored).
std::pair<mp::Complex, mp::Complex> reconstruct_eigenvalues(const SatakeTriple& t, long p, int k,
                                                            const PrecisionContext& ctx);

/// Q_p(X) expanded numerically from a triple; imaginary parts must vanish.
std::vector<mp::Real> local_factor(const SatakeTriple& t, Rho rho, const PrecisionContext& ctx);

/// Q_p(X) from the eigenvalues with exact rational coefficients. For spin the
/// polynomial is in Y = p^((2k-3)/2) X and has integer coefficients.
std::vector<mpq_class> exact_local_factor(const HeckeDatum& h, Rho rho);

/// Reads `p TAB lambda_p TAB lambda_p2` rows; '#' starts a comment.
std::vector<HeckeDatum> read_hecke_table(const std::string& path, int k);
std::vector<HeckeDatum> parse_hecke_table(const std::string& text, int k);

/// Coefficient table of L(s, F, ρ) from the ingested primes; every other
/// prime up to the cutoff is an unknown symbol.
lmodel::CoefficientTable coefficients_from_hecke(const std::vector<HeckeDatum>& data, Rho rho, long cutoff,
                                                 mp::Bits bits);

/// Same known/unknown pattern with zero placeholders, for when the
/// eigenvalues for primes up to `known_through` are not available.
lmodel::CoefficientTable pattern_table(Rho rho, long known_through, long cutoff);

}  // namespace fewcoef::satake
