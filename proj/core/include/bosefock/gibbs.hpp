#pragma once

#include "bosefock/basis.hpp"
#include "bosefock/quantization.hpp"
#include "bosefock/sparse.hpp"
#include "bosefock/types.hpp"

#include <vector>

namespace bosefock {

// Quasi-free Gibbs functional A -> Tr(rho A)/Tr(rho) with unnormalized
// density rho = exp(-beta dGamma(H - mu I)).  Immutable after construction.
struct GibbsContext {
  const TruncatedBasis* basis = nullptr;
  ThermalSpectrum spectrum;
  SparseOperator rho;
  double z_truncated = 0.0;
};

// Builds the context.  Guards lambda_max <= 0.95: beyond that the cutoff
// needed for meaningful traces is impractical, so fail with guidance instead
// of returning noise.
GibbsContext make_gibbs_context(const TruncatedBasis& basis,
                                const ThermalSpectrum& spectrum);

// Truncated partition function: sum over basis states of prod_j
// lambda_j^{alpha_j}, i.e. the trace of rho.  Monotone increasing in the
// cutoff with limit partition_closed.
double partition_truncated(const GibbsContext& ctx);

// Closed form prod_j (1 - lambda_j)^{-1}.
double partition_closed(const ThermalSpectrum& spectrum);

// Tr(rho A) / Z_truncated.
cplx gibbs_expectation(const GibbsContext& ctx, const SparseOperator& a);

// Closed form for the Weyl expectation:
// exp(-(1/4) sum_j |fhat_j|^2 (1+lambda_j)/(1-lambda_j)) with fhat the
// eigenbasis coordinates of f.
double weyl_gibbs_closed(const ThermalSpectrum& spectrum, const ModeVector& f);

// Direct truncated evaluation of the Weyl expectation.  Streams columns of
// exp(i Phi(f)) against the rows of rho instead of materializing the full
// operator; when rho is diagonal, columns above an adaptive level whose
// weight tail is negligible relative to Z are skipped.
cplx gibbs_weyl_direct(const GibbsContext& ctx, const ModeVector& f);

enum class TildeKind { creation_side, annihilation_side };

// Thermal dressing of smearing vectors, returned in the mode basis: the
// eigenbasis component j is scaled by lambda_j/sqrt(1-lambda_j) on the
// creation side and 1/sqrt(1-lambda_j) on the annihilation side.
ModeVector tilde_transform(const ThermalSpectrum& spectrum, const ModeVector& f,
                           TildeKind kind);

// Closed form for omega(adag(f1)...adag(fm) a(g1)...a(gm)): the symmetric
// inner product (permanent of the Gram matrix) of the dressed vectors.
cplx product_gibbs_closed(const ThermalSpectrum& spectrum,
                          const std::vector<ModeVector>& fs,
                          const std::vector<ModeVector>& gs);

// Two-point function omega(adag(f) a(g)) = sum_j conj(ghat_j)
// lambda_j/(1-lambda_j) fhat_j; linear in f, antilinear in g.
cplx two_point_closed(const ThermalSpectrum& spectrum, const ModeVector& f,
                      const ModeVector& g);

// Upper bound on the relative weight the truncation discards from a direct
// trace involving m_ops ladder factors: sum over levels k > cutoff - m_ops of
// the level multiplicity C(k+n-1, n-1) times lambda_max^k.  Reduces to the
// scalar geometric tail lambda_max^{D+1-m}/(1-lambda_max) for one mode.
double truncation_tail(int n_modes, int cutoff, int m_ops, double lambda_max);

} // namespace bosefock
