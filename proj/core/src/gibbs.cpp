#include "bosefock/gibbs.hpp"

#include "bosefock/ladder.hpp"
#include "bosefock/linalg.hpp"
#include "bosefock/toeplitz.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bosefock {

namespace {

void check_mode_vector(const ThermalSpectrum& spec, const ModeVector& f,
                       const char* who) {
  if (static_cast<int>(f.size()) != spec.n_modes())
    throw std::invalid_argument(std::string(who) + ": vector length " +
                                std::to_string(f.size()) +
                                " does not match mode count " +
                                std::to_string(spec.n_modes()));
}

// Coordinates of f in the eigenbasis: fhat_j = <v_j, f>.
std::vector<cplx> eigen_coords(const ThermalSpectrum& spec, const ModeVector& f) {
  const int n = spec.n_modes();
  std::vector<cplx> fhat(static_cast<std::size_t>(n), cplx(0.0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      fhat[static_cast<std::size_t>(j)] +=
          std::conj(spec.eigenvectors.at(i, j)) * f[static_cast<std::size_t>(i)];
  return fhat;
}

bool is_diagonal_operator(const SparseOperator& op) {
  for (int r = 0; r < op.dim(); ++r)
    for (const auto& [c, v] : op.row(r))
      if (c != r && v != cplx(0.0)) return false;
  return true;
}

} // namespace

GibbsContext make_gibbs_context(const TruncatedBasis& basis,
                                const ThermalSpectrum& spectrum) {
  if (spectrum.n_modes() != basis.n_modes())
    throw std::invalid_argument("make_gibbs_context: spectrum dimension " +
                                std::to_string(spectrum.n_modes()) +
                                " does not match mode count " +
                                std::to_string(basis.n_modes()));
  const double lmax = spectrum.lambda_max();
  if (lmax > 0.95)
    throw std::invalid_argument(
        "make_gibbs_context: lambda_max = " + std::to_string(lmax) +
        " exceeds 0.95; the cutoff required for a meaningful truncated trace "
        "grows like 1/(1-lambda_max) — increase beta or lower mu");
  GibbsContext ctx;
  ctx.basis = &basis;
  ctx.spectrum = spectrum;
  ctx.rho = exp_neg_beta_dgamma(basis, spectrum);
  ctx.z_truncated = ctx.rho.trace().real();
  if (!(ctx.z_truncated > 0.0))
    throw std::runtime_error("make_gibbs_context: non-positive truncated trace");
  return ctx;
}

double partition_truncated(const GibbsContext& ctx) { return ctx.z_truncated; }

double partition_closed(const ThermalSpectrum& spectrum) {
  double z = 1.0;
  for (double l : spectrum.lambdas) {
    if (l >= 1.0)
      throw std::invalid_argument(
          "partition_closed: lambda = " + std::to_string(l) + " is not below 1");
    z /= (1.0 - l);
  }
  return z;
}

cplx gibbs_expectation(const GibbsContext& ctx, const SparseOperator& a) {
  if (a.dim() != ctx.rho.dim())
    throw std::invalid_argument("gibbs_expectation: operator dimension " +
                                std::to_string(a.dim()) +
                                " does not match basis dimension " +
                                std::to_string(ctx.rho.dim()));
  cplx acc = 0.0;
  for (int r = 0; r < ctx.rho.dim(); ++r)
    for (const auto& [c, v] : ctx.rho.row(r)) acc += v * a.entry(c, r);
  return acc / ctx.z_truncated;
}

double weyl_gibbs_closed(const ThermalSpectrum& spectrum, const ModeVector& f) {
  check_mode_vector(spectrum, f, "weyl_gibbs_closed");
  const std::vector<cplx> fhat = eigen_coords(spectrum, f);
  double quad = 0.0;
  for (std::size_t j = 0; j < fhat.size(); ++j) {
    const double l = spectrum.lambdas[j];
    quad += std::norm(fhat[j]) * (1.0 + l) / (1.0 - l);
  }
  return std::exp(-0.25 * quad);
}

cplx gibbs_weyl_direct(const GibbsContext& ctx, const ModeVector& f) {
  const TruncatedBasis& basis = *ctx.basis;
  check_mode_vector(ctx.spectrum, f, "gibbs_weyl_direct");
  const SparseOperator gen = quadrature_phi(basis, f).scaled(cplx(0.0, 1.0));

  // Columns above level L contribute at most sum_{k>L} C(k+n-1,n-1)
  // lambda_max^k to Tr(rho W); for diagonal rho pick the smallest L whose
  // tail is negligible against Z.
  int level_cap = basis.cutoff();
  if (is_diagonal_operator(ctx.rho)) {
    const double target = 1e-10 * ctx.z_truncated;
    for (int l = 0; l <= basis.cutoff(); ++l) {
      if (truncation_tail(basis.n_modes(), l, 0, ctx.spectrum.lambda_max()) <=
          target) {
        level_cap = l;
        break;
      }
    }
  }

  StateVector unit(static_cast<std::size_t>(basis.dim()), 0.0);
  cplx acc = 0.0;
  for (int r = 0; r < basis.dim(); ++r) {
    if (basis.level(r) > level_cap) continue;
    const auto& row = ctx.rho.row(r);
    if (row.empty()) continue;
    unit[static_cast<std::size_t>(r)] = 1.0;
    StateVector col = exp_apply(gen, unit);
    unit[static_cast<std::size_t>(r)] = 0.0;
    for (const auto& [c, v] : row) acc += v * col[static_cast<std::size_t>(c)];
  }
  return acc / ctx.z_truncated;
}

ModeVector tilde_transform(const ThermalSpectrum& spectrum, const ModeVector& f,
                           TildeKind kind) {
  check_mode_vector(spectrum, f, "tilde_transform");
  const int n = spectrum.n_modes();
  std::vector<cplx> fhat = eigen_coords(spectrum, f);
  for (int j = 0; j < n; ++j) {
    const double l = spectrum.lambdas[static_cast<std::size_t>(j)];
    const double scale = (kind == TildeKind::creation_side)
                             ? l / std::sqrt(1.0 - l)
                             : 1.0 / std::sqrt(1.0 - l);
    fhat[static_cast<std::size_t>(j)] *= scale;
  }
  ModeVector out(static_cast<std::size_t>(n), cplx(0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[static_cast<std::size_t>(i)] +=
          spectrum.eigenvectors.at(i, j) * fhat[static_cast<std::size_t>(j)];
  return out;
}

cplx product_gibbs_closed(const ThermalSpectrum& spectrum,
                          const std::vector<ModeVector>& fs,
                          const std::vector<ModeVector>& gs) {
  if (fs.size() != gs.size())
    throw std::invalid_argument("product_gibbs_closed: list lengths " +
                                std::to_string(fs.size()) + " and " +
                                std::to_string(gs.size()) + " differ");
  if (fs.size() > 12)
    throw std::invalid_argument(
        "product_gibbs_closed: factor count capped at 12");
  std::vector<ModeVector> tf, tg;
  tf.reserve(fs.size());
  tg.reserve(gs.size());
  for (const ModeVector& f : fs)
    tf.push_back(tilde_transform(spectrum, f, TildeKind::creation_side));
  for (const ModeVector& g : gs)
    tg.push_back(tilde_transform(spectrum, g, TildeKind::annihilation_side));
  return symmetric_inner(tf, tg);
}

cplx two_point_closed(const ThermalSpectrum& spectrum, const ModeVector& f,
                      const ModeVector& g) {
  check_mode_vector(spectrum, f, "two_point_closed");
  check_mode_vector(spectrum, g, "two_point_closed");
  const std::vector<cplx> fhat = eigen_coords(spectrum, f);
  const std::vector<cplx> ghat = eigen_coords(spectrum, g);
  cplx acc = 0.0;
  for (std::size_t j = 0; j < fhat.size(); ++j) {
    const double l = spectrum.lambdas[j];
    acc += std::conj(ghat[j]) * (l / (1.0 - l)) * fhat[j];
  }
  return acc;
}

double truncation_tail(int n_modes, int cutoff, int m_ops, double lambda_max) {
  if (n_modes < 1) throw std::invalid_argument("truncation_tail: need a mode");
  if (lambda_max <= 0.0) return 0.0;
  if (lambda_max >= 1.0) return std::numeric_limits<double>::infinity();
  const int start = std::max(0, cutoff - m_ops + 1);
  // multiplicity C(k+n-1, n-1), advanced by ratio (k+n)/(k+1)
  double mult = 1.0;
  for (int i = 1; i <= n_modes - 1; ++i)
    mult *= static_cast<double>(start + i) / static_cast<double>(i);
  double lk = std::pow(lambda_max, start);
  double acc = 0.0;
  for (int k = start; k < start + 1000000; ++k) {
    const double term = mult * lk;
    acc += term;
    if (term < 1e-18 * acc || term < 1e-300) break;
    mult *= static_cast<double>(k + n_modes) / static_cast<double>(k + 1);
    lk *= lambda_max;
  }
  return acc;
}

} // namespace bosefock
