#include "bosefock/toeplitz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bosefock/coherent.hpp"
#include "bosefock/hermite.hpp"
#include "bosefock/ladder.hpp"
#include "bosefock/linalg.hpp"

namespace bosefock {

SparseOperator toeplitz_linear(const TruncatedBasis& basis, const LinearSymbol& s) {
  return s.conjugated ? annihilation_smeared(basis, s.c) : creation_smeared(basis, s.c);
}

SparseOperator quadrature_phi(const TruncatedBasis& basis, const ModeVector& x) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  SparseOperator up = creation_smeared(basis, x);
  return (up + up.adjoint()).scaled(inv_sqrt2);
}

SparseOperator weyl_operator(const TruncatedBasis& basis, const ModeVector& x) {
  if (basis.dim() > 2600)
    throw std::invalid_argument(
        "weyl_operator: materializing the full matrix is capped at dimension 2600 "
        "(got " + std::to_string(basis.dim()) + "); use the streaming evaluators");
  SparseOperator phi = quadrature_phi(basis, x);

  if (basis.dim() <= 600) {
    EigResult eig = hermitian_eig(dense_from_sparse(phi));
    DenseMatrix w = hermitian_function(
        eig, [](double t) { return std::exp(cplx(0.0, t)); });
    return sparse_from_dense(w, 1e-17);
  }

  // Columnwise exp(i Phi) e_j via the scaled Taylor route.
  SparseOperator gen = phi.scaled(cplx(0.0, 1.0));
  SparseOperator w(basis.dim());
  StateVector col(static_cast<std::size_t>(basis.dim()));
  for (int j = 0; j < basis.dim(); ++j) {
    std::fill(col.begin(), col.end(), cplx(0.0));
    col[static_cast<std::size_t>(j)] = 1.0;
    StateVector out = exp_apply(gen, col);
    for (int i = 0; i < basis.dim(); ++i)
      if (std::abs(out[static_cast<std::size_t>(i)]) > 1e-17)
        w.add(i, j, out[static_cast<std::size_t>(i)]);
  }
  return w;
}

namespace {

SparseOperator quadrature_matrix(const TruncatedBasis& basis,
                                 const std::function<cplx(cplx)>& phi, int order) {
  const int d = basis.cutoff();
  const GaussHermiteRule rule = gauss_hermite(order);

  // M[j,k] = sum_{p,q} w_p w_q phi(z) e_k(z) conj(e_j(z)),  z = t_p + i t_q.
  std::vector<cplx> acc(static_cast<std::size_t>(d + 1) * (d + 1), 0.0);
  std::vector<cplx> e(static_cast<std::size_t>(d) + 1);
  for (int p = 0; p < order; ++p)
    for (int q = 0; q < order; ++q) {
      const cplx z(rule.nodes[static_cast<std::size_t>(p)],
                   rule.nodes[static_cast<std::size_t>(q)]);
      const double w = rule.weights[static_cast<std::size_t>(p)] *
                       rule.weights[static_cast<std::size_t>(q)];
      e[0] = 1.0;
      for (int k = 1; k <= d; ++k)
        e[static_cast<std::size_t>(k)] =
            e[static_cast<std::size_t>(k) - 1] * z / std::sqrt(2.0 * k);
      const cplx f = w * phi(z);
      for (int j = 0; j <= d; ++j) {
        const cplx ej = f * std::conj(e[static_cast<std::size_t>(j)]);
        for (int k = 0; k <= d; ++k)
          acc[static_cast<std::size_t>(j) * (d + 1) + k] += ej * e[static_cast<std::size_t>(k)];
      }
    }

  SparseOperator m(basis.dim());
  for (int j = 0; j <= d; ++j)
    for (int k = 0; k <= d; ++k) {
      const cplx v = acc[static_cast<std::size_t>(j) * (d + 1) + k];
      if (std::abs(v) > 0.0) m.add(j, k, v);
    }
  return m;
}

} // namespace

QuadratureToeplitzResult toeplitz_quadrature_oracle(
    const TruncatedBasis& basis, const std::function<cplx(cplx)>& phi, int order) {
  if (basis.n_modes() != 1)
    throw std::invalid_argument("toeplitz_quadrature_oracle: single-mode only");
  if (order < 4 || order > 128)
    throw std::invalid_argument("toeplitz_quadrature_oracle: order outside [4, 128]");

  QuadratureToeplitzResult r;
  r.matrix = quadrature_matrix(basis, phi, order);
  const SparseOperator coarse = quadrature_matrix(basis, phi, order / 2);
  r.refinement_delta = 0.0;
  for (int j = 0; j < basis.dim(); ++j)
    for (int k = 0; k < basis.dim(); ++k) {
      const double delta = std::abs(r.matrix.entry(j, k) - coarse.entry(j, k));
      if (delta > r.refinement_delta) r.refinement_delta = delta;
    }
  return r;
}

} // namespace bosefock
