#pragma once

#include "bosefock/basis.hpp"
#include "bosefock/sparse.hpp"
#include "bosefock/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace bosefock {

// Result of a trace computation.  `exact` is the diagonal sum; the Monte
// Carlo fields are populated by trace_coherent_mc, the mode sequence by
// trace_mode_convergence.
struct TraceReport {
  cplx exact = 0.0;
  cplx estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t rejected = 0;
  double reject_bias_bound = 0.0;
  std::vector<std::pair<int, cplx>> mode_sequence;
};

// Diagonal sum over the graded basis.
cplx trace_exact(const SparseOperator& x);

// The coherent-kernel integral evaluated analytically: each matrix entry is
// weighted by its Gaussian moment factor, which vanishes off the diagonal and
// cancels the kernel normalization on it.  Equals trace_exact up to rounding;
// computed independently as a cross-check of the kernel conventions.
cplx trace_coherent_exact(const TruncatedBasis& basis, const SparseOperator& x);

// Monte Carlo estimate of Tr(X) = E[<X K_x, K_x>] with x drawn from the
// Gaussian measure on m_modes complex coordinates (independent real and
// imaginary parts of variance 1).  Samples with |x|^2 > 4*cutoff are
// rejected (counted, contributing zero) because the kernel norm overflows the
// truncation there; the induced bias is bounded a priori and reported.
// Counter-based per-sample streams make the result bit-identical for a fixed
// seed.  Requires X to be supported on the first m_modes modes.
TraceReport trace_coherent_mc(const TruncatedBasis& basis, const SparseOperator& x,
                              int m_modes, std::uint64_t samples,
                              std::uint64_t seed, bool antithetic = false);

// Partial diagonal sums over states occupying only the first m modes, for
// each m in the ascending list; stabilizes at trace_exact once m covers the
// support of X.  Entries of the list may exceed the mode count.
std::vector<std::pair<int, cplx>> trace_mode_convergence(
    const TruncatedBasis& basis, const SparseOperator& x,
    const std::vector<int>& modes);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a), for
// a > 0, x >= 0; used by the rejection bias bound.
double gamma_q(double a, double x);

} // namespace bosefock
