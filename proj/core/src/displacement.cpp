#include "bosefock/displacement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bosefock/coherent.hpp"
#include "bosefock/linalg.hpp"
#include "bosefock/ladder.hpp"
#include "bosefock/rng.hpp"

namespace bosefock {

namespace {

ModeVector conj_vector(const ModeVector& x) {
  ModeVector c(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) c[j] = std::conj(x[j]);
  return c;
}

ModeVector pad_to_modes(const TruncatedBasis& basis, const ModeVector& x, const char* who) {
  if (static_cast<int>(x.size()) > basis.n_modes())
    throw std::invalid_argument(std::string(who) + ": vector longer than the mode count");
  ModeVector out(static_cast<std::size_t>(basis.n_modes()), 0.0);
  std::copy(x.begin(), x.end(), out.begin());
  return out;
}

} // namespace

SparseOperator displacement_generator(const TruncatedBasis& basis, const ModeVector& x) {
  const ModeVector xc = conj_vector(pad_to_modes(basis, x, "displacement_generator"));
  SparseOperator up = creation_smeared(basis, xc);
  return (up - up.adjoint()).scaled(1.0 / std::sqrt(2.0));
}

SparseOperator displacement(const TruncatedBasis& basis, const ModeVector& x) {
  if (basis.dim() > 2600)
    throw std::invalid_argument(
        "displacement: materializing the full matrix is capped at dimension 2600 "
        "(got " + std::to_string(basis.dim()) + "); use the streaming evaluators");
  SparseOperator gen = displacement_generator(basis, x);
  SparseOperator u(basis.dim());
  StateVector col(static_cast<std::size_t>(basis.dim()));
  for (int j = 0; j < basis.dim(); ++j) {
    std::fill(col.begin(), col.end(), cplx(0.0));
    col[static_cast<std::size_t>(j)] = 1.0;
    StateVector out = exp_apply(gen, col);
    for (int i = 0; i < basis.dim(); ++i)
      if (std::abs(out[static_cast<std::size_t>(i)]) > 1e-17)
        u.add(i, j, out[static_cast<std::size_t>(i)]);
  }
  return u;
}

StateVector displacement_column_series(const TruncatedBasis& basis, const ModeVector& x,
                                       const OccupationIndex& beta) {
  const ModeVector xp = pad_to_modes(basis, x, "displacement_column_series");
  if (static_cast<int>(beta.size()) != basis.n_modes() ||
      occupation_level(beta) > basis.cutoff())
    throw std::invalid_argument("displacement_column_series: index outside the basis");
  const int n = basis.n_modes();
  const int d = basis.cutoff();

  // Single-mode columns from the literal formula
  //   e_b(z-a) e^{conj(a) z / 2} e^{-|a|^2/4} = sum_k col[k] e_k(z):
  //   col[k] = e^{-|a|^2/4} sqrt(2^k k!) sum_{l<=min(b,k)}
  //            C(b,l) (-a)^{b-l} (conj(a)/2)^{k-l} / ((k-l)! sqrt(2^b b!)).
  std::vector<std::vector<cplx>> cols(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const cplx a = xp[static_cast<std::size_t>(j)];
    const int b = beta[static_cast<std::size_t>(j)];
    auto& col = cols[static_cast<std::size_t>(j)];
    col.assign(static_cast<std::size_t>(d) + 1, 0.0);
    const double pre = std::exp(-std::norm(a) / 4.0);

    // binom[l] = C(b,l)
    std::vector<double> binom(static_cast<std::size_t>(b) + 1);
    binom[0] = 1.0;
    for (int l = 1; l <= b; ++l)
      binom[static_cast<std::size_t>(l)] =
          binom[static_cast<std::size_t>(l) - 1] * (b - l + 1) / l;

    double sqrt2b = 1.0; // sqrt(2^b b!)
    for (int m = 1; m <= b; ++m) sqrt2b *= std::sqrt(2.0 * m);

    double sqrt2k = 1.0; // sqrt(2^k k!), updated per k
    for (int k = 0; k <= d; ++k) {
      if (k > 0) sqrt2k *= std::sqrt(2.0 * k);
      cplx sum = 0.0;
      for (int l = std::min(b, k); l >= 0; --l) {
        cplx term = binom[static_cast<std::size_t>(l)];
        for (int t = 0; t < b - l; ++t) term *= -a;
        const int m = k - l;
        cplx tail = 1.0;
        for (int t = 1; t <= m; ++t) tail *= std::conj(a) / (2.0 * t);
        sum += term * tail;
      }
      col[static_cast<std::size_t>(k)] = pre * sqrt2k * sum / sqrt2b;
    }
  }

  StateVector out(static_cast<std::size_t>(basis.dim()));
  for (int i = 0; i < basis.dim(); ++i) {
    const OccupationIndex& g = basis.state(i);
    cplx v = 1.0;
    for (int j = 0; j < n; ++j)
      v *= cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(g[static_cast<std::size_t>(j)])];
    out[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

double weyl_commutation_check(const TruncatedBasis& basis, const ModeVector& x,
                              const ModeVector& y, int level_guard) {
  const ModeVector xp = pad_to_modes(basis, x, "weyl_commutation_check");
  const ModeVector yp = pad_to_modes(basis, y, "weyl_commutation_check");
  ModeVector xy(xp.size());
  for (std::size_t j = 0; j < xp.size(); ++j) xy[j] = xp[j] + yp[j];

  const SparseOperator lx = displacement_generator(basis, xp);
  const SparseOperator ly = displacement_generator(basis, yp);
  const SparseOperator lxy = displacement_generator(basis, xy);
  const cplx phase = std::exp(cplx(0.0, -0.5 * std::imag(mode_inner(xp, yp))));

  double acc = 0.0;
  StateVector col(static_cast<std::size_t>(basis.dim()));
  for (int i = 0; i < basis.dim(); ++i) {
    if (basis.level(i) > level_guard) continue;
    std::fill(col.begin(), col.end(), cplx(0.0));
    col[static_cast<std::size_t>(i)] = 1.0;
    StateVector lhs = exp_apply(ly, exp_apply(lx, col));
    StateVector rhs = exp_apply(lxy, col);
    for (int r = 0; r < basis.dim(); ++r)
      acc += std::norm(lhs[static_cast<std::size_t>(r)] -
                       phase * rhs[static_cast<std::size_t>(r)]);
  }
  return std::sqrt(acc);
}

double DensityCheckReport::relative_error() const {
  return std::abs(estimate - exact) / std::max(1.0, exact);
}

DensityCheckReport translation_density_check(const TruncatedBasis& basis,
                                             const ModeVector& x, const StateVector& p,
                                             std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0)
    throw std::invalid_argument("translation_density_check: need at least one sample");
  const ModeVector xp = pad_to_modes(basis, x, "translation_density_check");
  const int n = basis.n_modes();
  const double xn2 = mode_norm_sq(xp);
  const CounterRng rng(seed);

  double sum = 0.0, sum_sq = 0.0;
  ModeVector z(static_cast<std::size_t>(n));
  ModeVector shifted(static_cast<std::size_t>(n));
  for (std::uint64_t s = 0; s < samples; ++s) {
    double re_pairing = 0.0;
    for (int j = 0; j < n; ++j) {
      const auto [re, im] = rng.normal_pair(s, static_cast<std::uint64_t>(j));
      z[static_cast<std::size_t>(j)] = cplx(re, im);
      shifted[static_cast<std::size_t>(j)] = z[static_cast<std::size_t>(j)] - xp[static_cast<std::size_t>(j)];
      re_pairing += std::real(std::conj(xp[static_cast<std::size_t>(j)]) * z[static_cast<std::size_t>(j)]);
    }
    const double weight = std::exp(re_pairing - 0.5 * xn2);
    const double v = std::norm(evaluate_polynomial(basis, p, shifted)) * weight;
    sum += v;
    sum_sq += v * v;
  }

  DensityCheckReport rep;
  rep.samples = samples;
  rep.estimate = sum / static_cast<double>(samples);
  rep.exact = norm_sq(p);
  const double ns = static_cast<double>(samples);
  const double var = std::max(0.0, sum_sq / ns - rep.estimate * rep.estimate);
  rep.std_error = std::sqrt(var / ns);
  return rep;
}

} // namespace bosefock
