#ifndef BOSEFOCK_LADDER_HPP
#define BOSEFOCK_LADDER_HPP

// Creation/annihilation matrices on the truncated basis, smeared versions,
// the number operator, symmetric product states and the permanent-based
// symmetric inner product.
//
// Conventions (docs/normalization.md): creation(j)|a> = sqrt(a_j+1)|a+d_j>,
// with creation annihilating top-level states (level == cutoff), so that
// annihilation(j) is its exact adjoint and [a_i, a_j^dagger] = delta_ij holds
// exactly on levels <= cutoff-1.

#include <vector>

#include "bosefock/basis.hpp"
#include "bosefock/sparse.hpp"
#include "bosefock/types.hpp"

namespace bosefock {

/// a_j^dagger; zero on states at the cutoff level.
SparseOperator creation(const TruncatedBasis& basis, int mode);

/// a_j = adjoint of creation(j).
SparseOperator annihilation(const TruncatedBasis& basis, int mode);

/// a^dagger(c) = sum_j c_j a_j^dagger (linear in c).
SparseOperator creation_smeared(const TruncatedBasis& basis, const ModeVector& c);

/// a(c) = adjoint of creation_smeared(c) = sum_j conj(c_j) a_j.
SparseOperator annihilation_smeared(const TruncatedBasis& basis, const ModeVector& c);

/// N = sum_j a_j^dagger a_j, diagonal with the state level.
SparseOperator number_operator(const TruncatedBasis& basis);

/// Diagonal projection onto states supported on the first `m` modes.
SparseOperator mode_projection(const TruncatedBasis& basis, int m);

/// |0...0>.
StateVector vacuum(const TruncatedBasis& basis);

/// (m!)^{-1/2} a^dagger(f_1)...a^dagger(f_m) |vac>.  Throws if m exceeds the
/// basis cutoff (the state would be annihilated by truncation).
StateVector symmetric_product_state(const TruncatedBasis& basis,
                                    const std::vector<ModeVector>& fs);

/// Permanent of a square matrix (given as rows), Ryser's formula with
/// Gray-code subset updates, O(2^m m).  Throws for m > 20.
cplx permanent(const std::vector<std::vector<cplx>>& m);

/// <f_1 (x) ... (x) f_m , g_1 (x) ... (x) g_m>_sym = permanent of the Gram
/// matrix M_kl = sum_j f^k_j conj(g^l_j); linear in the f-list, antilinear in
/// the g-list (matching inner_product's orientation).  Equals
/// m! * inner_product(symmetric_product_state(fs), symmetric_product_state(gs))
/// whenever the truncation does not clip (m <= cutoff).
cplx symmetric_inner(const std::vector<ModeVector>& fs, const std::vector<ModeVector>& gs);

} // namespace bosefock

#endif
