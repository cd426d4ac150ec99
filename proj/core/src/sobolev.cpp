#include "bosefock/sobolev.hpp"

#include "bosefock/ladder.hpp"
#include "bosefock/linalg.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace bosefock {

namespace {

void check_order(int r) {
  if (r < 0 || r > kMaxSobolevOrder) {
    throw std::invalid_argument("sobolev order r must lie in [0, " +
                                std::to_string(kMaxSobolevOrder) + "], got " +
                                std::to_string(r));
  }
}

void check_dim(const TruncatedBasis& basis, const StateVector& p, const char* what) {
  if (static_cast<int>(p.size()) != basis.dim()) {
    throw std::invalid_argument(std::string(what) + ": vector length " +
                                std::to_string(p.size()) + " does not match basis dimension " +
                                std::to_string(basis.dim()));
  }
}

// (D_j c)_beta = sqrt(beta_j + 1) c_{beta + delta_j}; indices past the cutoff
// contribute nothing because the input lives in the truncated space.
StateVector coefficient_shift(const TruncatedBasis& basis, const StateVector& c, int mode) {
  StateVector out(c.size(), cplx(0.0, 0.0));
  OccupationIndex scratch;
  for (int i = 0; i < basis.dim(); ++i) {
    if (basis.level(i) == basis.cutoff()) break; // beta + delta_j outside truncation
    scratch = basis.state(i);
    ++scratch[mode];
    out[i] = std::sqrt(static_cast<double>(scratch[mode])) * c[basis.rank(scratch)];
  }
  return out;
}

} // namespace

std::vector<double> sobolev_chain_sums(const TruncatedBasis& basis,
                                       const StateVector& p, int r) {
  check_order(r);
  check_dim(basis, p, "sobolev_chain_sums");
  std::vector<double> sums(static_cast<std::size_t>(r) + 1, 0.0);
  sums[0] = norm_sq(p);
  const int n = basis.n_modes();
  std::vector<SparseOperator> ann;
  ann.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) ann.push_back(annihilation(basis, j));
  std::function<void(const StateVector&, int)> descend =
      [&](const StateVector& v, int depth) {
        if (depth == r) return;
        for (int j = 0; j < n; ++j) {
          StateVector child = ann[static_cast<std::size_t>(j)].apply(v);
          sums[static_cast<std::size_t>(depth) + 1] += norm_sq(child);
          descend(child, depth + 1);
        }
      };
  descend(p, 0);
  return sums;
}

double sobolev_norm_chain(const TruncatedBasis& basis, const StateVector& p,
                          int r, bool include_constant_term) {
  const std::vector<double> sums = sobolev_chain_sums(basis, p, r);
  double out = include_constant_term ? std::sqrt(sums[0]) : 0.0;
  for (int m = 1; m <= r; ++m) out += std::sqrt(sums[static_cast<std::size_t>(m)]);
  return out;
}

double sobolev_norm_level(const TruncatedBasis& basis, const StateVector& p, int r) {
  check_order(r);
  check_dim(basis, p, "sobolev_norm_level");
  double acc = 0.0;
  for (int i = 0; i < basis.dim(); ++i) {
    acc += std::pow(1.0 + basis.level(i), r) * std::norm(p[i]);
  }
  return std::sqrt(acc);
}

double gauss_sobolev_norm_chain(const TruncatedBasis& basis,
                                const StateVector& hermite_coeffs, int r,
                                bool include_constant_term) {
  check_order(r);
  check_dim(basis, hermite_coeffs, "gauss_sobolev_norm_chain");
  std::vector<double> sums(static_cast<std::size_t>(r) + 1, 0.0);
  sums[0] = norm_sq(hermite_coeffs);
  const int n = basis.n_modes();
  std::function<void(const StateVector&, int)> descend =
      [&](const StateVector& v, int depth) {
        if (depth == r) return;
        for (int j = 0; j < n; ++j) {
          StateVector child = coefficient_shift(basis, v, j);
          sums[static_cast<std::size_t>(depth) + 1] += norm_sq(child);
          descend(child, depth + 1);
        }
      };
  descend(hermite_coeffs, 0);
  double out = include_constant_term ? std::sqrt(sums[0]) : 0.0;
  for (int m = 1; m <= r; ++m) out += std::sqrt(sums[static_cast<std::size_t>(m)]);
  return out;
}

StateVector bargmann_transform_map(
    const TruncatedBasis& basis,
    const std::vector<std::pair<OccupationIndex, cplx>>& hermite_terms) {
  StateVector out(static_cast<std::size_t>(basis.dim()), cplx(0.0, 0.0));
  for (const auto& [alpha, value] : hermite_terms) {
    if (static_cast<int>(alpha.size()) != basis.n_modes()) {
      throw std::invalid_argument("bargmann_transform_map: multi-index has " +
                                  std::to_string(alpha.size()) + " modes, basis has " +
                                  std::to_string(basis.n_modes()));
    }
    if (occupation_level(alpha) > basis.cutoff()) {
      throw std::out_of_range("bargmann_transform_map: multi-index of degree " +
                              std::to_string(occupation_level(alpha)) +
                              " lies outside the truncation (cutoff " +
                              std::to_string(basis.cutoff()) + ")");
    }
    out[basis.rank(alpha)] += value;
  }
  return out;
}

std::vector<std::pair<OccupationIndex, cplx>> bargmann_transform_inverse(
    const TruncatedBasis& basis, const StateVector& p) {
  check_dim(basis, p, "bargmann_transform_inverse");
  std::vector<std::pair<OccupationIndex, cplx>> out;
  for (int i = 0; i < basis.dim(); ++i) {
    if (p[i] != cplx(0.0, 0.0)) out.emplace_back(basis.state(i), p[i]);
  }
  return out;
}

LevelBoundReport toeplitz_level_bound_check(const TruncatedBasis& basis,
                                            const LinearSymbol& phi, int k) {
  if (phi.conjugated) {
    throw std::invalid_argument(
        "toeplitz_level_bound_check: the level bound is stated for unconjugated "
        "linear symbols (level-raising side)");
  }
  if (static_cast<int>(phi.c.size()) != basis.n_modes()) {
    throw std::invalid_argument("toeplitz_level_bound_check: symbol has " +
                                std::to_string(phi.c.size()) + " modes, basis has " +
                                std::to_string(basis.n_modes()));
  }
  if (k < 0 || k + 1 > basis.cutoff()) {
    throw std::out_of_range("toeplitz_level_bound_check: need 0 <= k and k+1 <= cutoff "
                            "so the image level is resolved; got k = " + std::to_string(k) +
                            ", cutoff = " + std::to_string(basis.cutoff()));
  }

  const SparseOperator t = toeplitz_linear(basis, phi);
  const SparseOperator t_adj = t.adjoint();
  // T_phi raises level by exactly one, so projecting the input onto level k
  // turns the power iteration into one on the k -> k+1 block alone.
  auto project_level_k = [&](StateVector v) {
    for (int i = 0; i < basis.dim(); ++i) {
      if (basis.level(i) != k) v[i] = cplx(0.0, 0.0);
    }
    return v;
  };
  auto apply = [&](const StateVector& v) { return t.apply(project_level_k(v)); };
  auto apply_adjoint = [&](const StateVector& w) { return project_level_k(t_adj.apply(w)); };

  LevelBoundReport report;
  report.norm = power_iteration_norm(apply, apply_adjoint, basis.dim());
  report.bound = phi.norm() * std::sqrt(static_cast<double>(k) + 1.0);
  return report;
}

} // namespace bosefock
