#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bosefock/ladder.hpp"
#include "bosefock/sobolev.hpp"
#include "bosefock/toeplitz.hpp"

using namespace bosefock;

namespace {

std::uint64_t rng_state = 0x2545f4914f6cdd1dull;
double runif() {
  rng_state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = rng_state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
}

StateVector random_state(const TruncatedBasis& b) {
  StateVector p(static_cast<std::size_t>(b.dim()));
  for (auto& v : p) v = cplx(runif(), runif());
  return p;
}

StateVector random_level_state(const TruncatedBasis& b, int k) {
  StateVector p(static_cast<std::size_t>(b.dim()), cplx(0.0, 0.0));
  for (int i = 0; i < b.dim(); ++i) {
    if (b.level(i) == k) p[static_cast<std::size_t>(i)] = cplx(runif(), runif());
  }
  return p;
}

double falling_factorial(int k, int m) {
  double out = 1.0;
  for (int i = 0; i < m; ++i) out *= static_cast<double>(k - i);
  return out;
}

} // namespace

TEST_CASE("chain norm on the vacuum and on single basis states") {
  const TruncatedBasis b(1, 6);
  StateVector omega = vacuum(b);

  // The vacuum is annihilated by every chain of positive length.
  CHECK(sobolev_norm_chain(b, omega, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sobolev_norm_chain(b, omega, 2, false) == 0.0);
  CHECK(sobolev_norm_level(b, omega, 2) == doctest::Approx(1.0).epsilon(1e-15));

  // p = c * e_3 (single mode, level 3), r = 2: the chains contribute
  // ||p|| (1 + sqrt(3) + sqrt(6)), the level form gives (1+3) ||p||.
  const cplx c(0.7, -0.2);
  StateVector p(static_cast<std::size_t>(b.dim()), cplx(0.0, 0.0));
  p[static_cast<std::size_t>(b.rank({3}))] = c;
  const double pn = std::abs(c);
  CHECK(sobolev_norm_chain(b, p, 2) ==
        doctest::Approx(pn * (1.0 + std::sqrt(3.0) + std::sqrt(6.0))).epsilon(1e-13));
  CHECK(sobolev_norm_chain(b, p, 2, false) ==
        doctest::Approx(pn * (std::sqrt(3.0) + std::sqrt(6.0))).epsilon(1e-13));
  CHECK(sobolev_norm_level(b, p, 2) == doctest::Approx(4.0 * pn).epsilon(1e-13));

  // r = 0 collapses both forms to the plain norm.
  CHECK(sobolev_norm_chain(b, p, 0) == doctest::Approx(pn).epsilon(1e-15));
  CHECK(sobolev_norm_level(b, p, 0) == doctest::Approx(pn).epsilon(1e-15));
}

TEST_CASE("chain sums on homogeneous states give falling factorials") {
  // For p supported on level k, the sum over all n^m chains of length m of
  // ||a_{j_m} ... a_{j_1} p||^2 telescopes to k(k-1)...(k-m+1) ||p||^2,
  // independent of the number of modes.
  for (int n : {1, 2, 3}) {
    const int cutoff = (n == 3) ? 6 : 8;
    const TruncatedBasis b(n, cutoff);
    for (int k = 0; k <= cutoff; k += (n == 1 ? 1 : 2)) {
      StateVector p = random_level_state(b, k);
      const double p2 = norm_sq(p);
      const auto sums = sobolev_chain_sums(b, p, 3);
      for (int m = 0; m <= 3; ++m) {
        const double expected = falling_factorial(k, m) * p2;
        CHECK(std::abs(sums[static_cast<std::size_t>(m)] - expected) <=
              1e-10 * std::max(1.0, std::abs(expected)));
      }
    }
  }
}

TEST_CASE("chain norm is additive in squares across levels inside each order") {
  // Mixed states: the inner sums decompose over levels, so chain sums of a
  // two-level mixture are the sums of the homogeneous pieces.
  const TruncatedBasis b(2, 7);
  StateVector p = random_level_state(b, 3);
  StateVector q = random_level_state(b, 6);
  StateVector mix(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) mix[i] = p[i] + q[i];
  const auto sp = sobolev_chain_sums(b, p, 2);
  const auto sq = sobolev_chain_sums(b, q, 2);
  const auto sm = sobolev_chain_sums(b, mix, 2);
  for (int m = 0; m <= 2; ++m) {
    CHECK(sm[static_cast<std::size_t>(m)] ==
          doctest::Approx(sp[static_cast<std::size_t>(m)] + sq[static_cast<std::size_t>(m)])
              .epsilon(1e-12));
  }
  // Level form: squares add across disjoint levels as well.
  const double lp = sobolev_norm_level(b, p, 2);
  const double lq = sobolev_norm_level(b, q, 2);
  CHECK(sobolev_norm_level(b, mix, 2) ==
        doctest::Approx(std::sqrt(lp * lp + lq * lq)).epsilon(1e-12));
}

TEST_CASE("chain and level norms are equivalent with modest constants") {
  const TruncatedBasis b(2, 6);
  for (int rep = 0; rep < 6; ++rep) {
    StateVector p = random_state(b);
    for (int r : {1, 2}) {
      const double chain = sobolev_norm_chain(b, p, r);
      const double level = sobolev_norm_level(b, p, r);
      const double ratio = chain / level;
      // chain <= sqrt(r+1) level (Cauchy-Schwarz over the r+1 orders); the
      // reverse bound is generous at this cutoff.
      CHECK(ratio <= std::sqrt(static_cast<double>(r) + 1.0) + 1e-12);
      CHECK(ratio >= 0.4);
    }
    // Both forms are monotone in r.
    CHECK(sobolev_norm_chain(b, p, 3) >= sobolev_norm_chain(b, p, 2) - 1e-12);
    CHECK(sobolev_norm_level(b, p, 3) >= sobolev_norm_level(b, p, 2) - 1e-12);
  }
}

TEST_CASE("real-side chain norm agrees with the graded relabeling") {
  // The coefficient-shift route applies d/dx_j through H_k' = sqrt(k) H_{k-1}
  // directly on Hermite coefficients; it must reproduce the operator-matrix
  // chain norm of the relabeled vector at every order and both flag values.
  for (auto [n, cutoff] : {std::pair<int, int>{2, 6}, {3, 4}, {1, 8}}) {
    const TruncatedBasis b(n, cutoff);
    StateVector c = random_state(b);
    for (int r : {0, 1, 2, 3}) {
      for (bool with_const : {true, false}) {
        const double real_side = gauss_sobolev_norm_chain(b, c, r, with_const);
        const double fock_side = sobolev_norm_chain(b, c, r, with_const);
        CHECK(std::abs(real_side - fock_side) <= 1e-10 * std::max(1.0, fock_side));
      }
    }
  }
}

TEST_CASE("graded basis map relabels Hermite coefficients into Fock coordinates") {
  const TruncatedBasis b(2, 5);

  // The constant function maps to the vacuum.
  StateVector g0 = bargmann_transform_map(b, {{{0, 0}, cplx(1.0, 0.0)}});
  CHECK(norm(g0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g0[static_cast<std::size_t>(b.rank({0, 0}))] == cplx(1.0, 0.0));

  // H_2(x_1) H_1(x_2) maps to the basis state (2,1), nothing else.
  StateVector g21 = bargmann_transform_map(b, {{{2, 1}, cplx(1.0, 0.0)}});
  for (int i = 0; i < b.dim(); ++i) {
    const cplx expect = (i == b.rank({2, 1})) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    CHECK(g21[static_cast<std::size_t>(i)] == expect);
  }

  // Duplicate indices accumulate.
  StateVector acc = bargmann_transform_map(
      b, {{{1, 0}, cplx(0.25, 0.0)}, {{1, 0}, cplx(0.5, 1.0)}});
  CHECK(acc[static_cast<std::size_t>(b.rank({1, 0}))] == cplx(0.75, 1.0));

  // Round trip through the inverse relabeling is the identity, and the map
  // preserves the norm term by term.
  std::vector<std::pair<OccupationIndex, cplx>> terms;
  double sq = 0.0;
  for (int i = 0; i < b.dim(); i += 2) {
    const cplx v(runif(), runif());
    terms.emplace_back(b.state(i), v);
    sq += std::norm(v);
  }
  StateVector mapped = bargmann_transform_map(b, terms);
  CHECK(std::abs(norm_sq(mapped) - sq) <= 1e-15 * std::max(1.0, sq));
  auto back = bargmann_transform_inverse(b, mapped);
  REQUIRE(back.size() == terms.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].first == terms[i].first);
    CHECK(back[i].second == terms[i].second);
  }

  // Indices outside the truncation or with the wrong arity are rejected.
  CHECK_THROWS_AS(bargmann_transform_map(b, {{{6, 0}, cplx(1.0, 0.0)}}),
                  std::out_of_range);
  CHECK_THROWS_AS(bargmann_transform_map(b, {{{3, 3}, cplx(1.0, 0.0)}}),
                  std::out_of_range);
  CHECK_THROWS_AS(bargmann_transform_map(b, {{{1}, cplx(1.0, 0.0)}}),
                  std::invalid_argument);
}

TEST_CASE("level bound check: norm of the level block and its closed bound") {
  // Single mode, phi = the coordinate symbol: the block k -> k+1 is the
  // creation column, largest singular value sqrt(k+1); the bound is attained.
  const TruncatedBasis b1(1, 6);
  LinearSymbol coord{{cplx(1.0, 0.0)}, false};

  auto r0 = toeplitz_level_bound_check(b1, coord, 0);
  CHECK(r0.bound == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r0.norm == doctest::Approx(1.0).epsilon(1e-12));

  auto r3 = toeplitz_level_bound_check(b1, coord, 3);
  CHECK(r3.bound == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r3.norm <= r3.bound + 1e-10);
  CHECK(r3.norm == doctest::Approx(2.0).epsilon(1e-10));

  // Two modes, phi = (l_1 + l_2)/sqrt(2) at k = 2: ||phi|| = 1, so the block
  // norm is bounded by sqrt(3) — and equals it, since a mode rotation turns
  // phi into a single-mode symbol of the same length.
  const TruncatedBasis b2(2, 4);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  LinearSymbol mixed{{cplx(inv_sqrt2, 0.0), cplx(inv_sqrt2, 0.0)}, false};
  auto rm = toeplitz_level_bound_check(b2, mixed, 2);
  CHECK(rm.bound == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(rm.norm <= rm.bound + 1e-10);
  CHECK(rm.norm == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));

  // Complex coefficients scale the same way.
  LinearSymbol scaled{{cplx(0.0, 0.6), cplx(0.8, 0.0)}, false};
  auto rs = toeplitz_level_bound_check(b2, scaled, 1);
  CHECK(rs.bound == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(rs.norm <= rs.bound + 1e-10);
  CHECK(rs.norm == doctest::Approx(rs.bound).epsilon(1e-9));
}

TEST_CASE("level bound check argument guards") {
  const TruncatedBasis b(2, 4);
  LinearSymbol ok{{cplx(1.0, 0.0), cplx(0.0, 0.0)}, false};
  LinearSymbol conj_sym{{cplx(1.0, 0.0), cplx(0.0, 0.0)}, true};
  LinearSymbol short_sym{{cplx(1.0, 0.0)}, false};

  CHECK_THROWS_AS(toeplitz_level_bound_check(b, conj_sym, 1), std::invalid_argument);
  CHECK_THROWS_AS(toeplitz_level_bound_check(b, short_sym, 1), std::invalid_argument);
  CHECK_THROWS_AS(toeplitz_level_bound_check(b, ok, -1), std::out_of_range);
  CHECK_THROWS_AS(toeplitz_level_bound_check(b, ok, 4), std::out_of_range);
  CHECK_NOTHROW(toeplitz_level_bound_check(b, ok, 3));
}

TEST_CASE("sobolev argument guards") {
  const TruncatedBasis b(2, 4);
  StateVector p = random_state(b);
  StateVector wrong(static_cast<std::size_t>(b.dim()) + 1, cplx(0.0, 0.0));

  CHECK_THROWS_AS(sobolev_norm_chain(b, p, -1), std::invalid_argument);
  CHECK_THROWS_AS(sobolev_norm_chain(b, p, kMaxSobolevOrder + 1), std::invalid_argument);
  CHECK_THROWS_AS(sobolev_norm_chain(b, wrong, 2), std::invalid_argument);
  CHECK_THROWS_AS(sobolev_norm_level(b, wrong, 2), std::invalid_argument);
  CHECK_THROWS_AS(gauss_sobolev_norm_chain(b, wrong, 2), std::invalid_argument);
  CHECK_THROWS_AS(bargmann_transform_inverse(b, wrong), std::invalid_argument);
  CHECK_NOTHROW(sobolev_norm_chain(b, p, kMaxSobolevOrder));
}
