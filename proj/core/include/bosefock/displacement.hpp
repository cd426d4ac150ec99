#ifndef BOSEFOCK_DISPLACEMENT_HPP
#define BOSEFOCK_DISPLACEMENT_HPP

// Translation (displacement) operators
//   U_x f(z) = f(z - x) exp(<x,z>/2 - |x|^2/4),
// their Weyl commutation law, and the Monte Carlo check of the translated
// Gaussian measure density.

#include <cstdint>

#include "bosefock/basis.hpp"
#include "bosefock/sparse.hpp"
#include "bosefock/types.hpp"

namespace bosefock {

/// Anti-Hermitian generator L_x = (a^dagger(conj(x)) - a(conj(x))) / sqrt(2),
/// i.e. sum_j (conj(x_j) a^dagger_j - x_j a_j)/sqrt(2); U_x = exp(L_x).
SparseOperator displacement_generator(const TruncatedBasis& basis, const ModeVector& x);

/// U_x as a matrix, exp(L_x) applied column by column (Taylor with scaling).
/// Unitary up to truncation leakage near the cutoff; U_x vac = k_x, the
/// normalized coherent vector exp(-|x|^2/4) K_x.
SparseOperator displacement(const TruncatedBasis& basis, const ModeVector& x);

/// U_x e_beta computed instead from the literal weighted-translation formula:
/// expand e_beta(z - x) exp(<x,z>/2 - |x|^2/4) one mode at a time and project
/// onto degrees <= cutoff.  Independent series oracle for displacement().
StateVector displacement_column_series(const TruncatedBasis& basis, const ModeVector& x,
                                       const OccupationIndex& beta);

/// Frobenius norm of (U_y U_x - e^{-(i/2) Im<x,y>} U_{x+y}) restricted to
/// columns of level <= level_guard, evaluated by streaming column
/// applications (no full matrices).  The phase uses <x,y> = sum conj(x_j) y_j.
double weyl_commutation_check(const TruncatedBasis& basis, const ModeVector& x,
                              const ModeVector& y, int level_guard);

struct DensityCheckReport {
  double estimate = 0.0;   // MC value of the translated-weight integral
  double exact = 0.0;      // ||p||^2, the untranslated value
  double std_error = 0.0;
  std::uint64_t samples = 0;
  /// |estimate - exact| / max(1, exact).
  double relative_error() const;
};

/// Monte Carlo check of the translation density: samples z from the Gaussian
/// base measure and averages |p(z - x)|^2 exp(Re<x,z> - |x|^2/2), which
/// should reproduce ||p||^2.  Deterministic in (seed); per-sample counter
/// streams.
DensityCheckReport translation_density_check(const TruncatedBasis& basis,
                                             const ModeVector& x, const StateVector& p,
                                             std::uint64_t samples, std::uint64_t seed);

} // namespace bosefock

#endif
