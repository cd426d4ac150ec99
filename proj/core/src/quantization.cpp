#include "bosefock/quantization.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace bosefock {

namespace {

bool is_exactly_diagonal(const DenseMatrix& v) {
  for (int r = 0; r < v.n; ++r)
    for (int c = 0; c < v.n; ++c)
      if (r != c && v.at(r, c) != cplx(0.0)) return false;
  return true;
}

double multi_factorial(const OccupationIndex& alpha) {
  double f = 1.0;
  for (int a : alpha)
    for (int m = 2; m <= a; ++m) f *= static_cast<double>(m);
  return f;
}

} // namespace

OneBodyOperator::OneBodyOperator(DenseMatrix m) : matrix(std::move(m)) {
  double worst = 0.0;
  for (int r = 0; r < matrix.n; ++r)
    for (int c = 0; c < matrix.n; ++c)
      worst = std::max(worst,
                       std::abs(matrix.at(r, c) - std::conj(matrix.at(c, r))));
  if (worst > 1e-12 * std::max(1.0, matrix.max_abs()))
    throw std::invalid_argument("OneBodyOperator: matrix is not Hermitian");
}

double ThermalSpectrum::lambda_max() const {
  double m = 0.0;
  for (double l : lambdas) m = std::max(m, l);
  return m;
}

ThermalSpectrum thermal_spectrum(const OneBodyOperator& h, double beta, double mu) {
  if (!(beta > 0.0))
    throw std::invalid_argument(
        "thermal_spectrum: requires beta*(H - mu*I) > 0, so beta must be positive");
  const EigResult eig = hermitian_eig(h.matrix);
  if (!(mu < eig.values.front()))
    throw std::invalid_argument(
        "thermal_spectrum: requires beta*(H - mu*I) > 0, so mu must lie strictly "
        "below the smallest eigenvalue " + std::to_string(eig.values.front()));
  ThermalSpectrum spec;
  spec.beta = beta;
  spec.mu = mu;
  spec.eigenvalues = eig.values;
  spec.lambdas.resize(eig.values.size());
  for (std::size_t j = 0; j < eig.values.size(); ++j)
    spec.lambdas[j] = std::exp(-beta * (eig.values[j] - mu));
  spec.eigenvectors = eig.vectors;
  return spec;
}

SparseOperator d_gamma(const TruncatedBasis& basis, const OneBodyOperator& h) {
  const int n = basis.n_modes();
  if (h.n_modes() != n)
    throw std::invalid_argument("d_gamma: operator dimension " +
                                std::to_string(h.n_modes()) +
                                " does not match mode count " + std::to_string(n));
  SparseOperator op(basis.dim());
  OccupationIndex target;
  for (int c = 0; c < basis.dim(); ++c) {
    const OccupationIndex& alpha = basis.state(c);
    for (int j = 0; j < n; ++j) {
      if (alpha[static_cast<std::size_t>(j)] == 0) continue;
      const double aj = alpha[static_cast<std::size_t>(j)];
      for (int i = 0; i < n; ++i) {
        const cplx hij = h.matrix.at(i, j);
        if (hij == cplx(0.0)) continue;
        if (i == j) {
          op.add(c, c, hij * aj);
        } else {
          target = alpha;
          --target[static_cast<std::size_t>(j)];
          ++target[static_cast<std::size_t>(i)];
          const double ai = target[static_cast<std::size_t>(i)];
          op.add(basis.rank(target), c, hij * std::sqrt(aj * ai));
        }
      }
    }
  }
  op.prune(0.0);
  return op;
}

SparseOperator gamma_substitution(const TruncatedBasis& basis, const DenseMatrix& v) {
  const int n = basis.n_modes();
  if (v.n != n)
    throw std::invalid_argument("gamma_substitution: matrix dimension " +
                                std::to_string(v.n) +
                                " does not match mode count " + std::to_string(n));
  SparseOperator op(basis.dim());
  if (is_exactly_diagonal(v)) {
    for (int c = 0; c < basis.dim(); ++c) {
      const OccupationIndex& alpha = basis.state(c);
      cplx entry = 1.0;
      for (int j = 0; j < n; ++j)
        for (int rep = 0; rep < alpha[static_cast<std::size_t>(j)]; ++rep)
          entry *= v.at(j, j);
      op.add(c, c, entry);
    }
    op.prune(0.0);
    return op;
  }
  if (basis.cutoff() > 30)
    throw std::invalid_argument(
        "gamma_substitution: non-diagonal substitution is capped at cutoff 30 "
        "to keep the expansion in range");

  std::vector<cplx> cur, next;
  OccupationIndex scratch;
  for (int c = 0; c < basis.dim(); ++c) {
    const OccupationIndex& alpha = basis.state(c);
    const int level = basis.level(c);
    // Expand prod_j (sum_i V_ij z_i)^{alpha_j} level by level.
    cur.assign(1, cplx(1.0));
    int d = 0;
    for (int j = 0; j < n; ++j) {
      for (int rep = 0; rep < alpha[static_cast<std::size_t>(j)]; ++rep) {
        next.assign(static_cast<std::size_t>(basis.level_size(d + 1)), cplx(0.0));
        const int off = basis.level_offset(d);
        const int off_next = basis.level_offset(d + 1);
        for (int idx = 0; idx < basis.level_size(d); ++idx) {
          const cplx coeff = cur[static_cast<std::size_t>(idx)];
          if (coeff == cplx(0.0)) continue;
          scratch = basis.state(off + idx);
          for (int i = 0; i < n; ++i) {
            const cplx vij = v.at(i, j);
            if (vij == cplx(0.0)) continue;
            ++scratch[static_cast<std::size_t>(i)];
            next[static_cast<std::size_t>(basis.rank(scratch) - off_next)] +=
                coeff * vij;
            --scratch[static_cast<std::size_t>(i)];
          }
        }
        cur.swap(next);
        ++d;
      }
    }
    const int off = basis.level_offset(level);
    const double fa = multi_factorial(alpha);
    for (int idx = 0; idx < basis.level_size(level); ++idx) {
      const cplx coeff = cur[static_cast<std::size_t>(idx)];
      if (coeff == cplx(0.0)) continue;
      const double fb = multi_factorial(basis.state(off + idx));
      op.add(off + idx, c, coeff * std::sqrt(fb / fa));
    }
  }
  op.prune(0.0);
  return op;
}

SparseOperator exp_neg_beta_dgamma(const TruncatedBasis& basis,
                                   const ThermalSpectrum& spec) {
  const int n = spec.n_modes();
  if (n != basis.n_modes())
    throw std::invalid_argument("exp_neg_beta_dgamma: spectrum dimension " +
                                std::to_string(n) + " does not match mode count " +
                                std::to_string(basis.n_modes()));
  // V diag(lambda) V^dagger in the mode basis; exact zeros survive when the
  // eigenvector matrix is a (possibly permuted) identity.
  DenseMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      cplx acc = 0.0;
      for (int j = 0; j < n; ++j)
        acc += spec.eigenvectors.at(i, j) * spec.lambdas[static_cast<std::size_t>(j)] *
               std::conj(spec.eigenvectors.at(k, j));
      m.at(i, k) = acc;
    }
  return gamma_substitution(basis, m);
}

} // namespace bosefock
