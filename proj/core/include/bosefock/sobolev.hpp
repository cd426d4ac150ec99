#pragma once

#include "bosefock/basis.hpp"
#include "bosefock/toeplitz.hpp"
#include "bosefock/types.hpp"

#include <utility>
#include <vector>

namespace bosefock {

// Maximum Sobolev order accepted by the norm routines (cost guard: the chain
// norm enumerates n^r mode chains).
inline constexpr int kMaxSobolevOrder = 8;

// Inner chain sums S_m = sum over all mode chains (j_1..j_m) of
// ||a_{j_m} ... a_{j_1} p||^2 for m = 0..r (S_0 = ||p||^2).  For p
// homogeneous of level k, S_m = k(k-1)...(k-m+1) ||p||^2.
std::vector<double> sobolev_chain_sums(const TruncatedBasis& basis,
                                       const StateVector& p, int r);

// Chain-form Sobolev norm: sum_{m=0}^{r} sqrt(S_m).  The m = 0 term makes it
// a genuine norm; include_constant_term = false gives the seminorm starting
// at m = 1, which vanishes on constants.
double sobolev_norm_chain(const TruncatedBasis& basis, const StateVector& p,
                          int r, bool include_constant_term = true);

// Level-form Sobolev norm: sqrt(sum_k (1+k)^r ||Q_k p||^2) with Q_k the
// projection onto level k.
double sobolev_norm_level(const TruncatedBasis& basis, const StateVector& p, int r);

// The chain norm evaluated on the real side: the input holds coefficients
// over the product-Hermite basis (same multi-index enumeration) and each
// derivative d/dx_j is applied through the coefficient shift implied by
// H_k' = sqrt(k) H_{k-1}, without any operator matrices.  Numerically equal
// to sobolev_norm_chain of the relabeled vector — the isometry of the
// Gaussian transform order by order.
double gauss_sobolev_norm_chain(const TruncatedBasis& basis,
                                const StateVector& hermite_coeffs, int r,
                                bool include_constant_term = true);

// The Gaussian transform as a graded basis map: coefficient c at the Hermite
// multi-index alpha becomes coefficient c of the Fock basis state alpha.
// Throws if an index lies outside the truncation.
StateVector bargmann_transform_map(
    const TruncatedBasis& basis,
    const std::vector<std::pair<OccupationIndex, cplx>>& hermite_terms);

// Inverse relabeling: nonzero Fock coefficients as (multi-index, value) pairs
// in basis order.
std::vector<std::pair<OccupationIndex, cplx>> bargmann_transform_inverse(
    const TruncatedBasis& basis, const StateVector& p);

struct LevelBoundReport {
  double norm = 0.0;  // largest singular value of T_phi on level k
  double bound = 0.0; // ||phi|| sqrt(k+1)
};

// Checks the level bound ||T_phi p_k|| <= ||phi|| sqrt(k+1) ||p_k|| for an
// unconjugated linear symbol by power iteration on the k -> k+1 block.  The
// bound is attained for every phi (rotate modes so phi lies along one of
// them).  Requires k + 1 <= cutoff so the image level is resolved.
LevelBoundReport toeplitz_level_bound_check(const TruncatedBasis& basis,
                                            const LinearSymbol& phi, int k);

} // namespace bosefock
