#ifndef BOSEFOCK_LINALG_HPP
#define BOSEFOCK_LINALG_HPP

// Dense complex matrices and the numerical kernels shared across modules:
// cyclic Jacobi Hermitian eigendecomposition, Pade scaling-and-squaring
// exponential (cross-check route), Taylor exponential action for sparse
// anti-Hermitian generators, and a power-iteration operator norm.

#include <functional>
#include <vector>

#include "bosefock/sparse.hpp"
#include "bosefock/types.hpp"

namespace bosefock {

/// Minimal square complex matrix, row-major.
struct DenseMatrix {
  int n = 0;
  std::vector<cplx> a;

  DenseMatrix() = default;
  explicit DenseMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}

  cplx& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  const cplx& at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }

  static DenseMatrix identity(int n);
  DenseMatrix adjoint() const;
  double max_abs() const;
  double one_norm() const;
};

DenseMatrix matmul(const DenseMatrix& x, const DenseMatrix& y);
/// Row-by-row sparse product x y; no pruning of exact cancellations.
SparseOperator sparse_matmul(const SparseOperator& x, const SparseOperator& y);
DenseMatrix dense_from_sparse(const SparseOperator& s);
SparseOperator sparse_from_dense(const DenseMatrix& m, double prune_tol = 0.0);

/// Max |x_rc - y_rc|.
double max_abs_diff(const DenseMatrix& x, const DenseMatrix& y);

/// Eigendecomposition of a Hermitian matrix: values ascending, vectors as
/// columns of `vectors` (A V = V diag(values), V unitary).
struct EigResult {
  std::vector<double> values;
  DenseMatrix vectors;
  int sweeps = 0;
  double off_norm = 0.0; // remaining off-diagonal Frobenius mass
};

/// Cyclic Jacobi with complex rotations.  Stops when the off-diagonal
/// Frobenius norm drops below `threshold` times the matrix Frobenius norm, or
/// after `max_sweeps` sweeps.  Throws std::invalid_argument if the input is
/// not Hermitian to 1e-12 (relative).
EigResult hermitian_eig(const DenseMatrix& h, double threshold = 1e-14,
                        int max_sweeps = 100);

/// f(H) = V diag(f(values)) V^dagger for Hermitian H.
DenseMatrix hermitian_function(const EigResult& eig, const std::function<cplx(double)>& f);

/// Dense matrix exponential, Pade-13 scaling and squaring.  Kept as the
/// independent cross-check route for the exponential-based operators.
DenseMatrix pade_expm(const DenseMatrix& m);

/// exp(A) x for sparse A via scaled Taylor application: A is split as A/2^s
/// with ||A/2^s||_1 <= 1 and exp(A/2^s) applied 2^s times, each by a Taylor
/// series truncated at relative tolerance `tol`.
StateVector exp_apply(const SparseOperator& a, const StateVector& x, double tol = 1e-16);

/// Largest singular value of the map `apply` (with adjoint `apply_adjoint`)
/// on vectors of length dim_in, by power iteration on A^dagger A.
double power_iteration_norm(const std::function<StateVector(const StateVector&)>& apply,
                            const std::function<StateVector(const StateVector&)>& apply_adjoint,
                            int dim_in, int max_iters = 500, double tol = 1e-13,
                            std::uint64_t seed = 12345);

} // namespace bosefock

#endif
