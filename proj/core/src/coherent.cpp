#include "bosefock/coherent.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bosefock {

namespace {

void check_point(const TruncatedBasis& basis, const ModeVector& x, const char* who) {
  if (static_cast<int>(x.size()) > basis.n_modes())
    throw std::invalid_argument(std::string(who) + ": point has " +
                                std::to_string(x.size()) + " coordinates, basis has " +
                                std::to_string(basis.n_modes()) + " modes");
}

} // namespace

StateVector coherent_coeffs(const TruncatedBasis& basis, const ModeVector& x) {
  check_point(basis, x, "coherent_coeffs");
  const int n = basis.n_modes();
  const int d = basis.cutoff();

  // Per-mode ladder of factors conj(x_j)^m / sqrt(2^m m!), built incrementally.
  std::vector<std::vector<cplx>> mode_pow(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    auto& p = mode_pow[static_cast<std::size_t>(j)];
    p.resize(static_cast<std::size_t>(d) + 1);
    p[0] = 1.0;
    const cplx xj = (j < static_cast<int>(x.size())) ? std::conj(x[static_cast<std::size_t>(j)]) : cplx(0.0);
    for (int m = 1; m <= d; ++m)
      p[static_cast<std::size_t>(m)] =
          p[static_cast<std::size_t>(m) - 1] * xj / std::sqrt(2.0 * m);
  }

  StateVector v(static_cast<std::size_t>(basis.dim()));
  for (int i = 0; i < basis.dim(); ++i) {
    const OccupationIndex& a = basis.state(i);
    cplx c = 1.0;
    for (int j = 0; j < n; ++j)
      c *= mode_pow[static_cast<std::size_t>(j)][static_cast<std::size_t>(a[static_cast<std::size_t>(j)])];
    v[static_cast<std::size_t>(i)] = c;
  }
  return v;
}

cplx e_basis_value(int k, cplx z) {
  if (k < 0) throw std::invalid_argument("e_basis_value: negative degree");
  cplx v = 1.0;
  for (int m = 1; m <= k; ++m) v *= z / std::sqrt(2.0 * m);
  return v;
}

cplx e_alpha_value(const OccupationIndex& alpha, const ModeVector& x) {
  cplx v = 1.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const cplx xj = (j < x.size()) ? x[j] : cplx(0.0);
    v *= e_basis_value(alpha[j], xj);
  }
  return v;
}

cplx evaluate_polynomial(const TruncatedBasis& basis, const StateVector& p,
                         const ModeVector& x) {
  check_point(basis, x, "evaluate_polynomial");
  if (static_cast<int>(p.size()) != basis.dim())
    throw std::invalid_argument("evaluate_polynomial: coefficient count mismatch");
  cplx total = 0.0;
  for (int i = 0; i < basis.dim(); ++i)
    total += p[static_cast<std::size_t>(i)] * e_alpha_value(basis.state(i), x);
  return total;
}

} // namespace bosefock
