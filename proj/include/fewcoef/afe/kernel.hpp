#pragma once

#include "fewcoef/afe/plan.hpp"
#include "fewcoef/lmodel/functional_equation.hpp"
#include "fewcoef/lmodel/test_function.hpp"
#include "fewcoef/numerics/mp.hpp"

#include <memory>
#include <vector>

namespace fewcoef::afe {

/// g-independent part of the node weights at one s:
///   base1[k] = (h/2π) Q^(s+z) ∏Γ(κ(s+z)+λ) / z
///   base2[k] = (h/2π) Q^(1-s+z) ∏Γ(κ(1-s+z)+conj λ) / z
/// with z = ν + i(k - K)h, k = 0..2K.
struct NodeGrid {
    mp::Complex s;
    mp::Real nu, h;
    long K = 0;
    mp::Bits bits = 0;
    std::vector<mp::Complex> base1, base2;

    mp::Complex node(long k) const;  // k in [-K, K]
};

/// Builds (or fetches from the process-wide cache) the grid for a plan.
std::shared_ptr<const NodeGrid> node_grid(const lmodel::FunctionalEquation& fe, const mp::Complex& s, const AfePlan& plan);
void clear_grid_cache();

/// Node weights for one test function: A_k = base1_k g(s+z_k), B_k = base2_k g(s-z_k).
struct NodeWeights {
    std::vector<mp::Complex> A, B;
};
NodeWeights apply_test_function(const NodeGrid& grid, const lmodel::TestFunction& g);

/// T1_n = Q^s n^-s f1(s,n) and T2_n = Q^(1-s) n^(s-1) f2(1-s,n) for n in
/// [n_begin, n_end), written at index n - n_begin.
struct TermBlock {
    std::vector<mp::Complex> T1, T2;
};

/// OpenMP kernel: Horner in ω = exp(-ih ln n).
TermBlock terms_parallel(const NodeGrid& grid, const NodeWeights& w, long n_begin, long n_end);
/// Serial reference: every node power n^-(s+z) evaluated directly.
TermBlock terms_reference(const NodeGrid& grid, const NodeWeights& w, long n_begin, long n_end);

}  // namespace fewcoef::afe
