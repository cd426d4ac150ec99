#include "bosefock/trace.hpp"

#include "bosefock/coherent.hpp"
#include "bosefock/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bosefock {

namespace {

// prod_j 2^{a_j} a_j! as a double; exact for the occupation ranges in use.
double moment_weight(const OccupationIndex& a) {
  double w = 1.0;
  for (int occ : a) {
    for (int m = 1; m <= occ; ++m) w *= 2.0 * static_cast<double>(m);
  }
  return w;
}

bool occupies_outside(const OccupationIndex& a, int m_modes) {
  for (std::size_t j = static_cast<std::size_t>(m_modes); j < a.size(); ++j)
    if (a[j] != 0) return true;
  return false;
}

} // namespace

cplx trace_exact(const SparseOperator& x) { return x.trace(); }

cplx trace_coherent_exact(const TruncatedBasis& basis, const SparseOperator& x) {
  if (x.dim() != basis.dim())
    throw std::invalid_argument("trace_coherent_exact: dimension mismatch");
  // Integrating <X K_x, K_x> term by term: entry (beta, gamma) carries the
  // moment integral of conj(x)^gamma x^beta, which factorizes over modes as
  // prod_j (delta_{beta_j gamma_j} 2^{beta_j} beta_j!) and cancels the kernel
  // normalization 1/sqrt(2^beta beta!) from each side.
  cplx acc = 0.0;
  for (int r = 0; r < x.dim(); ++r) {
    const OccupationIndex& beta = basis.state(r);
    const double nr = std::sqrt(moment_weight(beta));
    for (const auto& [c, v] : x.row(r)) {
      const OccupationIndex& gamma = basis.state(c);
      double moment = 1.0;
      for (std::size_t j = 0; j < beta.size(); ++j) {
        if (beta[j] != gamma[j]) {
          moment = 0.0;
          break;
        }
        for (int m = 1; m <= beta[j]; ++m) moment *= 2.0 * static_cast<double>(m);
      }
      if (moment == 0.0) continue;
      acc += v * (moment / (nr * std::sqrt(moment_weight(gamma))));
    }
  }
  return acc;
}

TraceReport trace_coherent_mc(const TruncatedBasis& basis, const SparseOperator& x,
                              int m_modes, std::uint64_t samples,
                              std::uint64_t seed, bool antithetic) {
  if (x.dim() != basis.dim())
    throw std::invalid_argument("trace_coherent_mc: dimension mismatch");
  if (m_modes < 1 || m_modes > basis.n_modes())
    throw std::invalid_argument("trace_coherent_mc: m_modes = " +
                                std::to_string(m_modes) + " outside [1, " +
                                std::to_string(basis.n_modes()) + "]");
  if (samples == 0)
    throw std::invalid_argument("trace_coherent_mc: need at least one sample");
  for (int r = 0; r < x.dim(); ++r) {
    if (x.row(r).empty()) continue;
    if (occupies_outside(basis.state(r), m_modes))
      throw std::invalid_argument(
          "trace_coherent_mc: operator has support outside the first " +
          std::to_string(m_modes) + " modes (row " + std::to_string(r) + ")");
    for (const auto& [c, v] : x.row(r))
      if (v != cplx(0.0) && occupies_outside(basis.state(c), m_modes))
        throw std::invalid_argument(
            "trace_coherent_mc: operator has support outside the first " +
            std::to_string(m_modes) + " modes (column " + std::to_string(c) + ")");
  }

  const CounterRng rng(seed);
  const double radius_sq_cap = 4.0 * static_cast<double>(basis.cutoff());
  TraceReport report;
  report.exact = trace_exact(x);
  report.samples = samples;

  cplx acc = 0.0;
  double acc_sq = 0.0;
  ModeVector coords(static_cast<std::size_t>(m_modes));
  for (std::uint64_t s = 0; s < samples; ++s) {
    double r2 = 0.0;
    for (int j = 0; j < m_modes; ++j) {
      const auto [re, im] = rng.normal_pair(s, static_cast<std::uint64_t>(j));
      coords[static_cast<std::size_t>(j)] = cplx(re, im);
      r2 += re * re + im * im;
    }
    if (r2 > radius_sq_cap) {
      ++report.rejected;
      continue; // contributes zero but stays in the denominator
    }
    StateVector kernel = coherent_coeffs(basis, coords);
    cplx value = inner_product(x.apply(kernel), kernel);
    if (antithetic) {
      for (cplx& z : coords) z = -z;
      StateVector mirrored = coherent_coeffs(basis, coords);
      value = 0.5 * (value + inner_product(x.apply(mirrored), mirrored));
    }
    acc += value;
    acc_sq += std::norm(value);
  }

  const double n = static_cast<double>(samples);
  report.estimate = acc / n;
  if (samples > 1) {
    const double var = (acc_sq - std::norm(acc) / n) / (n - 1.0);
    report.std_error = std::sqrt(std::max(var, 0.0) / n);
  }

  // A priori bias bound for the rejected region: |<X K_x, K_x>| is at most
  // ||X||_F sum_{k<=D} (|x|^2/2)^k / k!, and |x|^2/2 follows a Gamma(m)
  // law, so each term integrates over the rejection region to
  // Gamma(m+k)/(k! Gamma(m)) Q(m+k, 2D).
  const double frob = x.frobenius_norm();
  const double log_gamma_m = std::lgamma(static_cast<double>(m_modes));
  double tail_sum = 0.0;
  for (int k = 0; k <= basis.cutoff(); ++k) {
    const double log_coeff = std::lgamma(static_cast<double>(m_modes + k)) -
                             std::lgamma(static_cast<double>(k) + 1.0) -
                             log_gamma_m;
    tail_sum += std::exp(log_coeff) *
                gamma_q(static_cast<double>(m_modes + k), radius_sq_cap / 2.0);
  }
  report.reject_bias_bound = frob * tail_sum;
  return report;
}

std::vector<std::pair<int, cplx>> trace_mode_convergence(
    const TruncatedBasis& basis, const SparseOperator& x,
    const std::vector<int>& modes) {
  if (x.dim() != basis.dim())
    throw std::invalid_argument("trace_mode_convergence: dimension mismatch");
  std::vector<std::pair<int, cplx>> out;
  int prev = 0;
  for (int m : modes) {
    if (m < prev)
      throw std::invalid_argument("trace_mode_convergence: mode list must ascend");
    prev = m;
    cplx acc = 0.0;
    for (int r = 0; r < x.dim(); ++r) {
      if (occupies_outside(basis.state(r), m)) continue;
      acc += x.entry(r, r);
    }
    out.emplace_back(m, acc);
  }
  return out;
}

double gamma_q(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma_q: a must be positive");
  if (x < 0.0) throw std::invalid_argument("gamma_q: x must be non-negative");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) {
    // series for P(a,x); Q = 1 - P
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  // continued fraction for Q(a,x), modified Lentz
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace bosefock
