#include "bosefock/ladder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bosefock {

namespace {

void check_mode(const TruncatedBasis& basis, int mode, const char* who) {
  if (mode < 0 || mode >= basis.n_modes())
    throw std::invalid_argument(std::string(who) + ": mode " + std::to_string(mode) +
                                " outside [0," + std::to_string(basis.n_modes()) + ")");
}

} // namespace

SparseOperator creation(const TruncatedBasis& basis, int mode) {
  check_mode(basis, mode, "creation");
  SparseOperator a(basis.dim());
  OccupationIndex up;
  for (int i = 0; i < basis.dim(); ++i) {
    if (basis.level(i) >= basis.cutoff()) continue; // truncation edge: annihilated
    up = basis.state(i);
    const int occ = up[static_cast<std::size_t>(mode)];
    up[static_cast<std::size_t>(mode)] = occ + 1;
    a.add(basis.rank(up), i, std::sqrt(static_cast<double>(occ + 1)));
  }
  return a;
}

SparseOperator annihilation(const TruncatedBasis& basis, int mode) {
  check_mode(basis, mode, "annihilation");
  SparseOperator a(basis.dim());
  OccupationIndex down;
  for (int i = 0; i < basis.dim(); ++i) {
    const OccupationIndex& st = basis.state(i);
    const int occ = st[static_cast<std::size_t>(mode)];
    if (occ == 0) continue;
    down = st;
    down[static_cast<std::size_t>(mode)] = occ - 1;
    a.add(basis.rank(down), i, std::sqrt(static_cast<double>(occ)));
  }
  return a;
}

SparseOperator creation_smeared(const TruncatedBasis& basis, const ModeVector& c) {
  if (static_cast<int>(c.size()) != basis.n_modes())
    throw std::invalid_argument("creation_smeared: coefficient vector has " +
                                std::to_string(c.size()) + " entries, basis has " +
                                std::to_string(basis.n_modes()) + " modes");
  SparseOperator a(basis.dim());
  OccupationIndex up;
  for (int i = 0; i < basis.dim(); ++i) {
    if (basis.level(i) >= basis.cutoff()) continue;
    const OccupationIndex& st = basis.state(i);
    for (int j = 0; j < basis.n_modes(); ++j) {
      const cplx cj = c[static_cast<std::size_t>(j)];
      if (cj == 0.0) continue;
      up = st;
      const int occ = up[static_cast<std::size_t>(j)];
      up[static_cast<std::size_t>(j)] = occ + 1;
      a.add(basis.rank(up), i, cj * std::sqrt(static_cast<double>(occ + 1)));
    }
  }
  return a;
}

SparseOperator annihilation_smeared(const TruncatedBasis& basis, const ModeVector& c) {
  return creation_smeared(basis, c).adjoint();
}

SparseOperator number_operator(const TruncatedBasis& basis) {
  SparseOperator a(basis.dim());
  for (int i = 0; i < basis.dim(); ++i)
    a.add(i, i, static_cast<double>(basis.level(i)));
  return a;
}

SparseOperator mode_projection(const TruncatedBasis& basis, int m) {
  if (m < 0 || m > basis.n_modes())
    throw std::invalid_argument("mode_projection: m outside [0, n_modes]");
  SparseOperator a(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    const OccupationIndex& st = basis.state(i);
    bool supported = true;
    for (int j = m; j < basis.n_modes(); ++j)
      if (st[static_cast<std::size_t>(j)] != 0) { supported = false; break; }
    if (supported) a.add(i, i, 1.0);
  }
  return a;
}

StateVector vacuum(const TruncatedBasis& basis) {
  StateVector v(static_cast<std::size_t>(basis.dim()), 0.0);
  v[0] = 1.0;
  return v;
}

StateVector symmetric_product_state(const TruncatedBasis& basis,
                                    const std::vector<ModeVector>& fs) {
  const int m = static_cast<int>(fs.size());
  if (m > basis.cutoff())
    throw std::invalid_argument(
        "symmetric_product_state: " + std::to_string(m) +
        " factors exceed the basis cutoff " + std::to_string(basis.cutoff()) +
        " (the product would be clipped by truncation)");
  StateVector v = vacuum(basis);
  for (auto it = fs.rbegin(); it != fs.rend(); ++it)
    v = creation_smeared(basis, *it).apply(v);
  double fact = 1.0;
  for (int k = 2; k <= m; ++k) fact *= k;
  const double inv = 1.0 / std::sqrt(fact);
  for (cplx& c : v) c *= inv;
  return v;
}

cplx permanent(const std::vector<std::vector<cplx>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1.0;
  if (n > 20)
    throw std::invalid_argument("permanent: order " + std::to_string(n) +
                                " exceeds the supported maximum 20");
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("permanent: matrix is not square");

  // Ryser with Gray-code subset enumeration:
  // perm(A) = (-1)^n sum_{S nonempty} (-1)^{|S|} prod_i sum_{j in S} A_ij.
  std::vector<cplx> rowsum(static_cast<std::size_t>(n), 0.0);
  cplx total = 0.0;
  std::uint32_t gray = 0;
  int popcount = 0;
  const std::uint64_t count = (1ull << n) - 1;
  for (std::uint64_t k = 1; k <= count; ++k) {
    const std::uint32_t next = static_cast<std::uint32_t>(k ^ (k >> 1));
    const std::uint32_t changed = next ^ gray;
    int j = 0;
    while (!((changed >> j) & 1u)) ++j;
    const bool added = (next >> j) & 1u;
    popcount += added ? 1 : -1;
    const double sign = added ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i)
      rowsum[static_cast<std::size_t>(i)] += sign * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    gray = next;

    cplx prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= rowsum[static_cast<std::size_t>(i)];
    total += ((popcount & 1) ? 1.0 : -1.0) * prod; // (-1)^{|S|} folded with (-1)^n below
  }
  // total currently holds sum_S (-1)^{|S|+1} prod; multiply by (-1)^{n+1}
  return (((n + 1) & 1) ? -1.0 : 1.0) * total;
}

cplx symmetric_inner(const std::vector<ModeVector>& fs, const std::vector<ModeVector>& gs) {
  if (fs.size() != gs.size())
    throw std::invalid_argument("symmetric_inner: lists must have equal length");
  const int m = static_cast<int>(fs.size());
  if (m == 0) return 1.0;
  std::vector<std::vector<cplx>> gram(static_cast<std::size_t>(m),
                                      std::vector<cplx>(static_cast<std::size_t>(m), 0.0));
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      // linear in f, conjugate in g
      const ModeVector& f = fs[static_cast<std::size_t>(k)];
      const ModeVector& g = gs[static_cast<std::size_t>(l)];
      cplx s = 0.0;
      const std::size_t nn = std::min(f.size(), g.size());
      for (std::size_t j = 0; j < nn; ++j) s += f[j] * std::conj(g[j]);
      gram[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = s;
    }
  return permanent(gram);
}

} // namespace bosefock
