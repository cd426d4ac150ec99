#ifndef BOSEFOCK_TOEPLITZ_HPP
#define BOSEFOCK_TOEPLITZ_HPP

// Toeplitz operators with linear symbols, the quadrature operator Phi, Weyl
// operators W(x) = exp(i Phi(x)), and the single-mode Gauss-Hermite Toeplitz
// oracle that pins every conjugation convention in the library.

#include <functional>

#include "bosefock/basis.hpp"
#include "bosefock/sparse.hpp"
#include "bosefock/types.hpp"

namespace bosefock {

/// Symbol phi = sum_j c_j e_1(z_j) in the first chi_1 level (conjugated =
/// false), or its complex conjugate (conjugated = true).
struct LinearSymbol {
  ModeVector c;
  bool conjugated = false;

  /// F^2 norm of the symbol: |c| either way.
  double norm() const { return mode_norm(c); }
};

/// T_phi for a linear symbol: the unconjugated symbol gives the smeared
/// creation operator a^dagger(c), the conjugated one gives a(c) (its exact
/// adjoint).  This identification is verified independently against
/// toeplitz_quadrature_oracle at n=1.
SparseOperator toeplitz_linear(const TruncatedBasis& basis, const LinearSymbol& s);

/// Quadrature operator Phi(x) = (a^dagger(x) + a(x)) / sqrt(2); Hermitian,
/// real-linear in x, with the creation side carrying x unconjugated.
SparseOperator quadrature_phi(const TruncatedBasis& basis, const ModeVector& x);

/// W(x) = exp(i Phi(x)): by Hermitian eigendecomposition for dim <= 600,
/// otherwise by columnwise Taylor application of the sparse generator
/// (dim capped at 2600; entries below 1e-17 pruned).  Shares its truncated
/// generator with displacement(-i conj(x)), so the two agree up to the
/// difference of the exponential routes.
SparseOperator weyl_operator(const TruncatedBasis& basis, const ModeVector& x);

struct QuadratureToeplitzResult {
  SparseOperator matrix;
  /// Max entrywise change between the rule at `order` and at `order/2`;
  /// large values mean the quadrature has not converged for this symbol.
  double refinement_delta = 0.0;
};

/// Single-mode Toeplitz matrix of a bounded symbol phi by 2-d Gauss-Hermite
/// product quadrature for the weight (2 pi)^{-1} e^{-|z|^2/2}:
///   M[j,k] = integral phi(z) e_k(z) conj(e_j(z)) dlambda_1(z).
/// Requires n_modes == 1 and 4 <= order <= 128.
QuadratureToeplitzResult toeplitz_quadrature_oracle(
    const TruncatedBasis& basis, const std::function<cplx(cplx)>& phi, int order);

} // namespace bosefock

#endif
