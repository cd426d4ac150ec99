#ifndef BOSEFOCK_COHERENT_HPP
#define BOSEFOCK_COHERENT_HPP

// Coherent (reproducing-kernel) vectors K_x and pointwise evaluation of
// truncated Fock elements as polynomials.
//
// Conventions (docs/normalization.md): the pairing is <x,z> = sum_j
// conj(x_j) z_j, the kernel is K_x(z) = exp(<x,z>/2), the monomial basis is
// e_k(z) = z^k / sqrt(2^k k!), and the Fock inner product is linear in its
// first argument, so inner_product(p, coherent_coeffs(x)) = p(x) holds
// literally for polynomials of degree <= cutoff.

#include "bosefock/basis.hpp"
#include "bosefock/types.hpp"

namespace bosefock {

/// Coefficients of K_x over the basis: at alpha,
///   prod_j conj(x_j)^{alpha_j} / sqrt(2^{alpha_j} alpha_j!).
/// ||K_x||^2 converges to exp(|x|^2/2) as the cutoff grows.
StateVector coherent_coeffs(const TruncatedBasis& basis, const ModeVector& x);

/// Single-mode basis function value e_k(z) = z^k / sqrt(2^k k!).
cplx e_basis_value(int k, cplx z);

/// Product basis value e_alpha(x) = prod_j e_{alpha_j}(x_j).
cplx e_alpha_value(const OccupationIndex& alpha, const ModeVector& x);

/// p(x) = sum_alpha p_alpha e_alpha(x), evaluated term by term (the
/// independent route against inner_product(p, coherent_coeffs(x))).
cplx evaluate_polynomial(const TruncatedBasis& basis, const StateVector& p,
                         const ModeVector& x);

} // namespace bosefock

#endif
