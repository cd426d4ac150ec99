#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bosefock/gibbs.hpp"
#include "bosefock/ladder.hpp"
#include "bosefock/linalg.hpp"
#include "bosefock/quantization.hpp"
#include "bosefock/toeplitz.hpp"

using namespace bosefock;

namespace {

const cplx I1(0.0, 1.0);

std::uint64_t rng_state = 0x9216d5d98979fb1bull;
double runif() {
  rng_state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = rng_state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
}

ThermalSpectrum spectrum_from_lambdas(const std::vector<double>& lambdas) {
  // H = diag(-ln lambda), beta = 1, mu = 0.
  DenseMatrix h(static_cast<int>(lambdas.size()));
  for (std::size_t j = 0; j < lambdas.size(); ++j)
    h.at(static_cast<int>(j), static_cast<int>(j)) = -std::log(lambdas[j]);
  return thermal_spectrum(OneBodyOperator(h), 1.0, 0.0);
}

DenseMatrix random_hermitian(int n) {
  DenseMatrix h(n);
  for (int r = 0; r < n; ++r) {
    h.at(r, r) = runif();
    for (int c = r + 1; c < n; ++c) {
      h.at(r, c) = cplx(runif(), runif());
      h.at(c, r) = std::conj(h.at(r, c));
    }
  }
  return h;
}

DenseMatrix random_unitary(int n) {
  DenseMatrix h = random_hermitian(n);
  DenseMatrix ih(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) ih.at(r, c) = I1 * h.at(r, c);
  return pade_expm(ih);
}

ModeVector apply_matrix(const DenseMatrix& u, const ModeVector& f) {
  ModeVector out(static_cast<std::size_t>(u.n), cplx(0.0));
  for (int i = 0; i < u.n; ++i)
    for (int k = 0; k < u.n; ++k)
      out[static_cast<std::size_t>(i)] += u.at(i, k) * f[static_cast<std::size_t>(k)];
  return out;
}

SparseOperator ladder_word(const TruncatedBasis& b, const std::vector<ModeVector>& fs,
                           const std::vector<ModeVector>& gs) {
  SparseOperator w = SparseOperator::identity(b.dim());
  for (const ModeVector& f : fs) w = w * creation_smeared(b, f);
  for (const ModeVector& g : gs) w = w * annihilation_smeared(b, g);
  return w;
}

} // namespace

TEST_CASE("context construction and guards") {
  TruncatedBasis b(1, 20);
  auto ctx = make_gibbs_context(b, spectrum_from_lambdas({0.5}));
  CHECK(ctx.z_truncated > 0.0);

  CHECK_THROWS_AS(make_gibbs_context(b, spectrum_from_lambdas({0.96})),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_gibbs_context(TruncatedBasis(2, 6), spectrum_from_lambdas({0.5})),
                  std::invalid_argument);
}

TEST_CASE("partition function: truncated vs closed") {
  // single mode lambda = 1/2 at deep cutoff: geometric series
  auto ctx1 = make_gibbs_context(TruncatedBasis(1, 60), spectrum_from_lambdas({0.5}));
  CHECK(std::abs(partition_truncated(ctx1) - 2.0) < 1e-12);
  CHECK(partition_closed(ctx1.spectrum) == doctest::Approx(2.0).epsilon(1e-14));

  // two modes (1/2, 1/3): product 2 * 3/2 = 3
  auto ctx2 = make_gibbs_context(TruncatedBasis(2, 60),
                                 spectrum_from_lambdas({0.5, 1.0 / 3.0}));
  CHECK(std::abs(partition_truncated(ctx2) - 3.0) < 1e-10);
  CHECK(partition_closed(ctx2.spectrum) == doctest::Approx(3.0).epsilon(1e-14));

  // vacuum-only basis
  auto ctx0 = make_gibbs_context(TruncatedBasis(1, 0), spectrum_from_lambdas({0.5}));
  CHECK(partition_truncated(ctx0) == 1.0);

  // empty spectrum
  ThermalSpectrum empty;
  empty.eigenvectors = DenseMatrix(0);
  CHECK(partition_closed(empty) == 1.0);

  // monotone in the cutoff and bounded by the closed form
  double prev = 0.0;
  for (int d : {2, 4, 8, 16, 32}) {
    auto ctx = make_gibbs_context(TruncatedBasis(1, d), spectrum_from_lambdas({0.5}));
    const double z = partition_truncated(ctx);
    CHECK(z > prev);
    CHECK(z < partition_closed(ctx.spectrum));
    prev = z;
  }

  // truncated value sits within the tail bound of the closed form
  auto ctx8 = make_gibbs_context(TruncatedBasis(2, 8),
                                 spectrum_from_lambdas({0.5, 0.25}));
  const double gap = partition_closed(ctx8.spectrum) - partition_truncated(ctx8);
  CHECK(gap > 0.0);
  CHECK(gap <= truncation_tail(2, 8, 0, 0.5) * partition_closed(ctx8.spectrum));
}

TEST_CASE("gibbs expectation basics") {
  TruncatedBasis b(1, 60);
  auto ctx = make_gibbs_context(b, spectrum_from_lambdas({0.5}));

  CHECK(gibbs_expectation(ctx, SparseOperator::identity(b.dim())) == cplx(1.0));

  // mean occupation lambda/(1-lambda) = 1
  CHECK(std::abs(gibbs_expectation(ctx, number_operator(b)) - cplx(1.0)) < 1e-10);

  // odd words vanish by number conservation
  CHECK(std::abs(gibbs_expectation(ctx, creation(b, 0))) < 1e-12);

  // linearity
  SparseOperator n_op = number_operator(b);
  SparseOperator combo = n_op.scaled(cplx(2.0, 1.0)) + SparseOperator::identity(b.dim());
  const cplx lhs = gibbs_expectation(ctx, combo);
  const cplx rhs = cplx(2.0, 1.0) * gibbs_expectation(ctx, n_op) + 1.0;
  CHECK(std::abs(lhs - rhs) < 1e-12);

  CHECK_THROWS_AS(gibbs_expectation(ctx, SparseOperator::identity(3)),
                  std::invalid_argument);
}

TEST_CASE("gibbs positivity on random operators") {
  TruncatedBasis b(2, 4);
  auto ctx = make_gibbs_context(b, spectrum_from_lambdas({0.5, 0.3}));
  for (int rep = 0; rep < 5; ++rep) {
    SparseOperator a(b.dim());
    for (int k = 0; k < 40; ++k) {
      const int r = static_cast<int>((runif() * 0.5 + 0.5) * (b.dim() - 1));
      const int c = static_cast<int>((runif() * 0.5 + 0.5) * (b.dim() - 1));
      a.add(r, c, cplx(runif(), runif()));
    }
    const cplx val = gibbs_expectation(ctx, a.adjoint() * a);
    CHECK(val.real() >= -1e-12);
    CHECK(std::abs(val.imag()) < 1e-12);
  }
}

TEST_CASE("weyl expectation closed form") {
  auto spec = spectrum_from_lambdas({0.5});

  CHECK(weyl_gibbs_closed(spec, {cplx(0.0)}) == 1.0);

  // |f| = 1: exp(-(1/4)(1+1/2)/(1-1/2)) = exp(-3/4)
  const double e34 = std::exp(-0.75);
  CHECK(weyl_gibbs_closed(spec, {cplx(0.6, -0.8)}) ==
        doctest::Approx(e34).epsilon(1e-14));

  // scaling: value(2f) = value(f)^4
  const double v1 = weyl_gibbs_closed(spec, {cplx(0.3, 0.4)});
  const double v2 = weyl_gibbs_closed(spec, {cplx(0.6, 0.8)});
  CHECK(v2 == doctest::Approx(v1 * v1 * v1 * v1).epsilon(1e-13));

  CHECK_THROWS_AS(weyl_gibbs_closed(spec, ModeVector{cplx(1.0), cplx(0.0)}),
                  std::invalid_argument);
}

TEST_CASE("weyl expectation: direct trace matches the closed form") {
  // single mode, materialized operator at moderate cutoff
  {
    TruncatedBasis b(1, 40);
    auto ctx = make_gibbs_context(b, spectrum_from_lambdas({0.5}));
    const ModeVector f = {cplx(1.0)};
    const cplx direct = gibbs_expectation(ctx, weyl_operator(b, f));
    CHECK(std::abs(direct - cplx(weyl_gibbs_closed(ctx.spectrum, f))) < 1e-6);
    CHECK(std::abs(direct.imag()) < 1e-8);
  }

  // single mode, streamed route at deep cutoff
  {
    TruncatedBasis b(1, 80);
    auto ctx = make_gibbs_context(b, spectrum_from_lambdas({0.5}));
    const ModeVector f = {cplx(0.6, -0.8)};
    const cplx direct = gibbs_weyl_direct(ctx, f);
    CHECK(std::abs(direct - cplx(std::exp(-0.75))) < 1e-6);
    // f = 0: exact up to the adaptive streaming bias (target 1e-10 of Z)
    CHECK(std::abs(gibbs_weyl_direct(ctx, {cplx(0.0)}) - cplx(1.0)) < 1e-9);
  }

  // two modes, streamed route
  {
    TruncatedBasis b(2, 60);
    auto ctx = make_gibbs_context(b, spectrum_from_lambdas({0.6, 0.3}));
    const ModeVector f = {cplx(0.5, 0.5), cplx(0.0, 1.0 / std::sqrt(2.0))};
    const cplx direct = gibbs_weyl_direct(ctx, f);
    CHECK(std::abs(direct - cplx(weyl_gibbs_closed(ctx.spectrum, f))) < 1e-6);
  }

  // two modes, non-diagonal one-body operator, full streaming
  {
    TruncatedBasis b(2, 28);
    DenseMatrix h(2);
    h.at(0, 0) = 1.0;
    h.at(1, 1) = 1.6;
    h.at(0, 1) = cplx(0.2, 0.3);
    h.at(1, 0) = cplx(0.2, -0.3);
    auto spec = thermal_spectrum(OneBodyOperator(h), 1.0, 0.0);
    CHECK(spec.lambda_max() < 0.45);
    auto ctx = make_gibbs_context(b, spec);
    const ModeVector f = {cplx(0.4, -0.2), cplx(0.3, 0.6)};
    const cplx direct = gibbs_weyl_direct(ctx, f);
    CHECK(std::abs(direct - cplx(weyl_gibbs_closed(spec, f))) < 1e-6);
  }
}

TEST_CASE("tilde transforms") {
  auto spec = spectrum_from_lambdas({0.5});
  ModeVector cre = tilde_transform(spec, {cplx(1.0)}, TildeKind::creation_side);
  ModeVector ann = tilde_transform(spec, {cplx(1.0)}, TildeKind::annihilation_side);
  CHECK(std::abs(cre[0] - cplx(0.5 / std::sqrt(0.5))) < 1e-15);
  CHECK(std::abs(ann[0] - cplx(std::sqrt(2.0))) < 1e-15);

  // zero maps to zero, and the transform is linear
  auto spec2 = spectrum_from_lambdas({0.5, 0.25});
  ModeVector z = tilde_transform(spec2, {cplx(0.0), cplx(0.0)},
                                 TildeKind::creation_side);
  CHECK(mode_norm(z) == 0.0);
  ModeVector u = {cplx(0.3, 0.1), cplx(-0.2, 0.5)};
  ModeVector v = {cplx(1.0, -1.0), cplx(0.4, 0.0)};
  ModeVector sum(2);
  for (int i = 0; i < 2; ++i) sum[i] = u[i] + cplx(2.0) * v[i];
  ModeVector lhs = tilde_transform(spec2, sum, TildeKind::annihilation_side);
  ModeVector a1 = tilde_transform(spec2, u, TildeKind::annihilation_side);
  ModeVector a2 = tilde_transform(spec2, v, TildeKind::annihilation_side);
  for (int i = 0; i < 2; ++i)
    CHECK(std::abs(lhs[i] - (a1[i] + cplx(2.0) * a2[i])) < 1e-14);
}

TEST_CASE("product expectation closed form: frozen values") {
  auto spec = spectrum_from_lambdas({0.5});
  const ModeVector h1 = {cplx(1.0)};

  // m = 1: the two-point value lambda/(1-lambda) = 1
  CHECK(std::abs(product_gibbs_closed(spec, {h1}, {h1}) - cplx(1.0)) < 1e-13);
  CHECK(std::abs(two_point_closed(spec, h1, h1) - cplx(1.0)) < 1e-13);

  // m = 2, all vectors h1: permanent of the 2x2 all-ones Gram times 1 = 2
  CHECK(std::abs(product_gibbs_closed(spec, {h1, h1}, {h1, h1}) - cplx(2.0)) < 1e-12);

  // orthogonal smearing vectors give zero
  auto spec2 = spectrum_from_lambdas({0.5, 1.0 / 3.0});
  const ModeVector e1 = {cplx(1.0), cplx(0.0)};
  const ModeVector e2 = {cplx(0.0), cplx(1.0)};
  CHECK(std::abs(product_gibbs_closed(spec2, {e1}, {e2})) < 1e-15);
  CHECK(std::abs(two_point_closed(spec2, e1, e2)) < 1e-15);

  CHECK_THROWS_AS(product_gibbs_closed(spec, {h1}, {h1, h1}), std::invalid_argument);
  CHECK_THROWS_AS(product_gibbs_closed(spec, std::vector<ModeVector>(13, h1),
                                       std::vector<ModeVector>(13, h1)),
                  std::invalid_argument);
}

TEST_CASE("product expectation vs direct truncated trace") {
  // single mode, m = 1 and m = 2 at deep cutoff
  {
    TruncatedBasis b(1, 84);
    auto ctx = make_gibbs_context(b, spectrum_from_lambdas({0.6}));
    const ModeVector f = {cplx(0.8, -0.3)};
    const ModeVector g = {cplx(0.2, 0.9)};
    const cplx direct = gibbs_expectation(ctx, ladder_word(b, {f}, {g}));
    const cplx closed = product_gibbs_closed(ctx.spectrum, {f}, {g});
    CHECK(std::abs(direct - closed) < 1e-10);
    CHECK(std::abs(two_point_closed(ctx.spectrum, f, g) - closed) < 1e-14);

    const ModeVector h1 = {cplx(1.0)};
    const cplx d2 = gibbs_expectation(ctx, ladder_word(b, {h1, h1}, {h1, h1}));
    CHECK(std::abs(d2 - cplx(4.5)) < 1e-6); // 2 (lambda/(1-lambda))^2
    CHECK(std::abs(d2 - product_gibbs_closed(ctx.spectrum, {h1, h1}, {h1, h1})) /
              std::abs(d2) <
          1e-6);
  }

  // two modes, m = 3, random smearing vectors
  {
    TruncatedBasis b(2, 86);
    auto ctx = make_gibbs_context(b, spectrum_from_lambdas({0.6, 0.35}));
    std::vector<ModeVector> fs, gs;
    for (int k = 0; k < 3; ++k) {
      fs.push_back({cplx(runif(), runif()), cplx(runif(), runif())});
      gs.push_back({cplx(runif(), runif()), cplx(runif(), runif())});
    }
    const cplx direct = gibbs_expectation(ctx, ladder_word(b, fs, gs));
    const cplx closed = product_gibbs_closed(ctx.spectrum, fs, gs);
    CHECK(std::abs(direct - closed) / std::abs(closed) < 1e-6);
  }
}

TEST_CASE("closed forms are basis independent") {
  // conjugate a diagonal one-body operator by a random unitary and transform
  // the smearing vectors accordingly: every closed form is invariant
  DenseMatrix h0(2);
  h0.at(0, 0) = 0.8;
  h0.at(1, 1) = 1.7;
  auto spec0 = thermal_spectrum(OneBodyOperator(h0), 1.0, 0.0);

  DenseMatrix u = random_unitary(2);
  DenseMatrix hc = matmul(matmul(u, h0), u.adjoint());
  // clean up rounding so the hermiticity validation is satisfied exactly
  for (int r = 0; r < 2; ++r)
    for (int c = r; c < 2; ++c) {
      const cplx sym = 0.5 * (hc.at(r, c) + std::conj(hc.at(c, r)));
      hc.at(r, c) = sym;
      hc.at(c, r) = std::conj(sym);
    }
  auto spec1 = thermal_spectrum(OneBodyOperator(hc), 1.0, 0.0);

  const ModeVector f = {cplx(0.3, 0.4), cplx(-0.5, 0.2)};
  const ModeVector g = {cplx(0.1, -0.7), cplx(0.6, 0.3)};
  const ModeVector fu = apply_matrix(u, f);
  const ModeVector gu = apply_matrix(u, g);

  CHECK(partition_closed(spec1) == doctest::Approx(partition_closed(spec0)).epsilon(1e-10));
  CHECK(weyl_gibbs_closed(spec1, fu) ==
        doctest::Approx(weyl_gibbs_closed(spec0, f)).epsilon(1e-10));
  CHECK(std::abs(two_point_closed(spec1, fu, gu) - two_point_closed(spec0, f, g)) < 1e-10);
  CHECK(std::abs(product_gibbs_closed(spec1, {fu, fu}, {gu, gu}) -
                 product_gibbs_closed(spec0, {f, f}, {g, g})) < 1e-10);
}

TEST_CASE("truncation tail bound") {
  // one mode: exactly the geometric tail
  CHECK(truncation_tail(1, 10, 2, 0.5) ==
        doctest::Approx(std::pow(0.5, 9) / 0.5).epsilon(1e-14));
  CHECK(truncation_tail(1, 10, 0, 0.5) ==
        doctest::Approx(std::pow(0.5, 11) / 0.5).epsilon(1e-14));

  // decreasing in the cutoff
  CHECK(truncation_tail(2, 12, 0, 0.6) < truncation_tail(2, 8, 0, 0.6));

  // dominates the brute-force discarded mass for two modes
  const double l1 = 0.5, l2 = 0.3;
  double brute = 0.0;
  for (int a1 = 0; a1 <= 200; ++a1)
    for (int a2 = 0; a2 <= 200; ++a2)
      if (a1 + a2 > 6) brute += std::pow(l1, a1) * std::pow(l2, a2);
  CHECK(brute <= truncation_tail(2, 6, 0, 0.5));
  // with equal factors the bound is tight
  double brute_eq = 0.0;
  for (int a1 = 0; a1 <= 200; ++a1)
    for (int a2 = 0; a2 <= 200; ++a2)
      if (a1 + a2 > 6) brute_eq += std::pow(0.5, a1 + a2);
  CHECK(brute_eq == doctest::Approx(truncation_tail(2, 6, 0, 0.5)).epsilon(1e-10));

  CHECK(truncation_tail(1, 10, 0, 0.0) == 0.0);
  CHECK(std::isinf(truncation_tail(1, 10, 0, 1.0)));
}
