#pragma once

#include "bosefock/basis.hpp"
#include "bosefock/linalg.hpp"
#include "bosefock/sparse.hpp"
#include "bosefock/types.hpp"

#include <vector>

namespace bosefock {

// One-body Hamiltonian on the n-mode space.  Construction validates
// hermiticity so downstream spectral code can rely on it.
struct OneBodyOperator {
  DenseMatrix matrix;

  explicit OneBodyOperator(DenseMatrix m);
  int n_modes() const { return matrix.n; }
};

// Spectral data of exp(-beta (H - mu I)): eigenvalues of H ascending, the
// Boltzmann factors lambda_j = exp(-beta (h_j - mu)), and the orthonormal
// eigenvector columns.
struct ThermalSpectrum {
  double beta = 0.0;
  double mu = 0.0;
  std::vector<double> eigenvalues;
  std::vector<double> lambdas;
  DenseMatrix eigenvectors;

  int n_modes() const { return eigenvectors.n; }
  double lambda_max() const;
};

// Diagonalizes H and forms the Boltzmann factors.  Requires beta > 0 and
// mu < min eigenvalue so that beta*(H - mu*I) > 0 and every lambda_j lies in
// (0,1); violations throw std::invalid_argument naming that condition.
ThermalSpectrum thermal_spectrum(const OneBodyOperator& h, double beta, double mu);

// Additive second quantization: sum_{ij} H_ij adag_i a_j, assembled entry by
// entry.  Block diagonal in the level grading; vacuum eigenvalue 0.
SparseOperator d_gamma(const TruncatedBasis& basis, const OneBodyOperator& h);

// Multiplicative second quantization: the operator taking p(z) to p applied
// to the substituted coordinates l_j = sum_i V_ij z_i.  Level preserving.
// Diagonal V uses a closed-form diagonal; otherwise the substitution is
// expanded level by level, guarded to cutoff <= 30.
SparseOperator gamma_substitution(const TruncatedBasis& basis, const DenseMatrix& v);

// exp(-beta dGamma(H - mu I)) realized as gamma_substitution of
// V diag(lambda) V^dagger.  Diagonal with entries prod_j lambda_j^{alpha_j}
// when H is diagonal.
SparseOperator exp_neg_beta_dgamma(const TruncatedBasis& basis,
                                   const ThermalSpectrum& spec);

} // namespace bosefock
