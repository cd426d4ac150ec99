#include "bosefock/basis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bosefock {

std::uint64_t TruncatedBasis::dimension_of(int n_modes, int cutoff) {
  // C(n_modes + cutoff, cutoff), multiplicative form with overflow check.
  std::uint64_t dim = 1;
  for (int i = 1; i <= n_modes; ++i) {
    // dim *= (cutoff + i), then / i; reorder to stay integral.
    const std::uint64_t num = static_cast<std::uint64_t>(cutoff) + i;
    if (dim > std::numeric_limits<std::uint64_t>::max() / num)
      return std::numeric_limits<std::uint64_t>::max();
    dim = dim * num / i;
  }
  return dim;
}

TruncatedBasis::TruncatedBasis(int n_modes, int cutoff, std::size_t capacity)
    : n_modes_(n_modes), cutoff_(cutoff) {
  if (n_modes < 1)
    throw std::invalid_argument("TruncatedBasis: n_modes must be >= 1, got " +
                                std::to_string(n_modes));
  if (cutoff < 0)
    throw std::invalid_argument("TruncatedBasis: cutoff must be >= 0, got " +
                                std::to_string(cutoff));
  const std::uint64_t d = dimension_of(n_modes, cutoff);
  if (d > capacity)
    throw std::invalid_argument(
        "TruncatedBasis: dimension " + std::to_string(d) + " exceeds capacity " +
        std::to_string(capacity) +
        " (reduce cutoff or n_modes, or raise the capacity argument)");

  states_.reserve(static_cast<std::size_t>(d));
  offsets_.reserve(cutoff + 2);

  // Per level k, distribute k quanta with the first mode's occupation
  // descending; recursion on the remaining modes keeps the same rule.
  OccupationIndex a(static_cast<std::size_t>(n_modes), 0);
  for (int k = 0; k <= cutoff; ++k) {
    offsets_.push_back(static_cast<int>(states_.size()));
    // iterative multi-loop: a_0 from k down to 0, then a_1 from rest down, ...
    struct Frame { int mode, remaining, next; };
    std::vector<Frame> stack;
    stack.push_back({0, k, k});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.mode == n_modes - 1) {
        a[static_cast<std::size_t>(f.mode)] = f.remaining;
        states_.push_back(a);
        levels_.push_back(k);
        stack.pop_back();
        continue;
      }
      if (f.next < 0) {
        a[static_cast<std::size_t>(f.mode)] = 0;
        stack.pop_back();
        continue;
      }
      a[static_cast<std::size_t>(f.mode)] = f.next;
      const int rem = f.remaining - f.next;
      --f.next;
      stack.push_back({f.mode + 1, rem, rem});
    }
  }
  offsets_.push_back(static_cast<int>(states_.size()));

  for (int i = 0; i < dim(); ++i) rank_[states_[static_cast<std::size_t>(i)]] = i;
}

int TruncatedBasis::rank(const OccupationIndex& a) const {
  const int r = find(a);
  if (r < 0) throw std::out_of_range("TruncatedBasis::rank: index not in basis");
  return r;
}

int TruncatedBasis::find(const OccupationIndex& a) const {
  auto it = rank_.find(a);
  return it == rank_.end() ? -1 : it->second;
}

cplx mode_inner(const ModeVector& x, const ModeVector& y) {
  cplx s = 0.0;
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t j = 0; j < n; ++j) s += std::conj(x[j]) * y[j];
  return s;
}

double mode_norm_sq(const ModeVector& x) {
  double s = 0.0;
  for (const cplx& v : x) s += std::norm(v);
  return s;
}

double mode_norm(const ModeVector& x) { return std::sqrt(mode_norm_sq(x)); }

cplx inner_product(const StateVector& u, const StateVector& v) {
  cplx s = 0.0;
  const std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) s += u[i] * std::conj(v[i]);
  return s;
}

double norm_sq(const StateVector& u) {
  double s = 0.0;
  for (const cplx& v : u) s += std::norm(v);
  return s;
}

double norm(const StateVector& u) { return std::sqrt(norm_sq(u)); }

} // namespace bosefock
