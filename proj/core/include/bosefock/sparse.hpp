#ifndef BOSEFOCK_SPARSE_HPP
#define BOSEFOCK_SPARSE_HPP

// Sparse complex operator on a truncated basis, stored row-wise as sorted
// (column, value) pairs.  Assembly appends entries; rows are coalesced lazily.

#include <cstddef>
#include <utility>
#include <vector>

#include "bosefock/basis.hpp"
#include "bosefock/types.hpp"

namespace bosefock {

class SparseOperator {
public:
  using Entry = std::pair<int, cplx>; // (column, value)

  SparseOperator() : dim_(0) {}
  explicit SparseOperator(int dim);

  static SparseOperator identity(int dim);

  int dim() const { return dim_; }
  std::size_t nnz() const;

  /// Accumulate A[r,c] += v.  Duplicates are merged on the next read access.
  void add(int r, int c, cplx v);

  /// A[r,c], zero if absent.
  cplx entry(int r, int c) const;

  /// Sorted, coalesced entries of row r.
  const std::vector<Entry>& row(int r) const;

  /// y = A x (y resized to dim).
  void apply(const StateVector& x, StateVector& y) const;
  StateVector apply(const StateVector& x) const;

  SparseOperator adjoint() const;
  SparseOperator transpose() const;

  void scale(cplx s);
  SparseOperator scaled(cplx s) const;

  /// Drop entries with |value| <= tol.
  void prune(double tol);

  cplx trace() const;
  double frobenius_norm() const;
  double max_abs_entry() const;

  /// Max column-sum of |entries| (the induced 1-norm), used to pick
  /// exponential scaling.
  double one_norm() const;

  SparseOperator operator+(const SparseOperator& o) const;
  SparseOperator operator-(const SparseOperator& o) const;
  SparseOperator operator*(const SparseOperator& o) const; // matrix product

private:
  void normalize_row(int r) const;
  void normalize_all() const;

  int dim_;
  mutable std::vector<std::vector<Entry>> rows_;
  mutable std::vector<char> dirty_;
};

inline SparseOperator operator*(cplx s, const SparseOperator& a) { return a.scaled(s); }
inline SparseOperator operator*(const SparseOperator& a, cplx s) { return a.scaled(s); }

/// Frobenius norm of (A - B).
double frobenius_distance(const SparseOperator& a, const SparseOperator& b);

/// Restrict A to basis levels: rows with level > row_guard and columns with
/// level > col_guard are dropped (pass -1 to leave a side unrestricted).
SparseOperator restrict_levels(const TruncatedBasis& basis, const SparseOperator& a,
                               int row_guard, int col_guard);

} // namespace bosefock

#endif
