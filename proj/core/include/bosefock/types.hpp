#ifndef BOSEFOCK_TYPES_HPP
#define BOSEFOCK_TYPES_HPP

// Shared scalar/vector types and the two inner-product conventions used
// throughout the library.  See docs/normalization.md for the derivations.

#include <complex>
#include <vector>

namespace bosefock {

using cplx = std::complex<double>;

/// Coefficient vector of a mode-space (one-particle) element, one entry per mode.
using ModeVector = std::vector<cplx>;

/// Coefficient vector of a Fock-space element over a TruncatedBasis, one entry
/// per occupation index, in basis order.
using StateVector = std::vector<cplx>;

/// Mode-space pairing, conjugate in the FIRST argument:
///   mode_inner(x, y) = sum_j conj(x_j) y_j.
/// This matches the pairing <x,z> = sum_j conj(x_j) z_j used for coherent
/// vectors and the translation density.
cplx mode_inner(const ModeVector& x, const ModeVector& y);

double mode_norm_sq(const ModeVector& x);
double mode_norm(const ModeVector& x);

/// Fock-space inner product, linear in the FIRST argument:
///   inner_product(u, v) = sum_a u_a conj(v_a).
/// Fixed this way round so that the reproducing identity reads
/// inner_product(p, coherent_coeffs(x)) = p(x) literally, and so that
/// symmetric_inner is linear in its f-list and antilinear in its g-list.
cplx inner_product(const StateVector& u, const StateVector& v);

double norm_sq(const StateVector& u);
double norm(const StateVector& u);

} // namespace bosefock

#endif
