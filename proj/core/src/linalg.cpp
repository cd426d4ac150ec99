#include "bosefock/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bosefock {

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix m(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.at(c, r) = std::conj(at(r, c));
  return m;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : a) m = std::max(m, std::abs(v));
  return m;
}

double DenseMatrix::one_norm() const {
  double m = 0.0;
  for (int c = 0; c < n; ++c) {
    double s = 0.0;
    for (int r = 0; r < n; ++r) s += std::abs(at(r, c));
    m = std::max(m, s);
  }
  return m;
}

DenseMatrix matmul(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.n != y.n) throw std::invalid_argument("matmul: dimension mismatch");
  const int n = x.n;
  DenseMatrix z(n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      const cplx v = x.at(r, k);
      if (v == 0.0) continue;
      const cplx* yrow = &y.a[static_cast<std::size_t>(k) * n];
      cplx* zrow = &z.a[static_cast<std::size_t>(r) * n];
      for (int c = 0; c < n; ++c) zrow[c] += v * yrow[c];
    }
  }
  return z;
}

SparseOperator sparse_matmul(const SparseOperator& x, const SparseOperator& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("sparse_matmul: dimension mismatch");
  SparseOperator z(x.dim());
  std::vector<cplx> acc(static_cast<std::size_t>(x.dim()), cplx(0.0, 0.0));
  std::vector<int> touched;
  for (int r = 0; r < x.dim(); ++r) {
    touched.clear();
    for (const auto& [k, v] : x.row(r)) {
      for (const auto& [c, w] : y.row(k)) {
        if (acc[static_cast<std::size_t>(c)] == cplx(0.0, 0.0)) touched.push_back(c);
        acc[static_cast<std::size_t>(c)] += v * w;
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int c : touched) {
      z.add(r, c, acc[static_cast<std::size_t>(c)]);
      acc[static_cast<std::size_t>(c)] = cplx(0.0, 0.0);
    }
  }
  return z;
}

DenseMatrix dense_from_sparse(const SparseOperator& s) {
  DenseMatrix m(s.dim());
  for (int r = 0; r < s.dim(); ++r)
    for (const auto& e : s.row(r)) m.at(r, e.first) = e.second;
  return m;
}

SparseOperator sparse_from_dense(const DenseMatrix& m, double prune_tol) {
  SparseOperator s(m.n);
  for (int r = 0; r < m.n; ++r)
    for (int c = 0; c < m.n; ++c)
      if (std::abs(m.at(r, c)) > prune_tol) s.add(r, c, m.at(r, c));
  return s;
}

double max_abs_diff(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.n != y.n) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

namespace {

double frobenius(const DenseMatrix& m) {
  double s = 0.0;
  for (const cplx& v : m.a) s += std::norm(v);
  return std::sqrt(s);
}

double off_diagonal_norm(const DenseMatrix& m) {
  double s = 0.0;
  for (int r = 0; r < m.n; ++r)
    for (int c = 0; c < m.n; ++c)
      if (r != c) s += std::norm(m.at(r, c));
  return std::sqrt(s);
}

} // namespace

EigResult hermitian_eig(const DenseMatrix& h, double threshold, int max_sweeps) {
  const int n = h.n;
  const double scale = std::max(h.max_abs(), 1e-300);
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c)
      if (std::abs(h.at(r, c) - std::conj(h.at(c, r))) > 1e-12 * scale)
        throw std::invalid_argument(
            "hermitian_eig: matrix is not Hermitian at entry (" + std::to_string(r) + "," +
            std::to_string(c) + ")");

  DenseMatrix a = h;
  DenseMatrix v = DenseMatrix::identity(n);
  const double fnorm = std::max(frobenius(a), 1e-300);

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold * fnorm) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a.at(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        // phase factor taking the pivot real, then a real Jacobi rotation
        const cplx phase = apq / mag;              // e^{i phi}
        const double app = std::real(a.at(p, p));
        const double aqq = std::real(a.at(q, q));
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // unitary J: column p = (c, -s conj(phase)), column q = (s, c conj(phase))
        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);
        // rows p,q of A <- J^dagger A
        for (int col = 0; col < n; ++col) {
          const cplx xp = a.at(p, col);
          const cplx xq = a.at(q, col);
          a.at(p, col) = c * xp + std::conj(jqp) * xq;
          a.at(q, col) = s * xp + std::conj(jqq) * xq;
        }
        // columns p,q of A <- A J
        for (int row = 0; row < n; ++row) {
          const cplx xp = a.at(row, p);
          const cplx xq = a.at(row, q);
          a.at(row, p) = c * xp + jqp * xq;
          a.at(row, q) = s * xp + jqq * xq;
        }
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
        a.at(p, p) = cplx(std::real(a.at(p, p)), 0.0);
        a.at(q, q) = cplx(std::real(a.at(q, q)), 0.0);
        // accumulate V <- V J
        for (int row = 0; row < n; ++row) {
          const cplx xp = v.at(row, p);
          const cplx xq = v.at(row, q);
          v.at(row, p) = c * xp + jqp * xq;
          v.at(row, q) = s * xp + jqq * xq;
        }
      }
    }
  }

  EigResult out;
  out.sweeps = sweep;
  out.off_norm = off_diagonal_norm(a);
  out.values.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = std::real(a.at(i, i));

  // sort ascending, permute eigenvector columns to match
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return out.values[static_cast<std::size_t>(i)] < out.values[static_cast<std::size_t>(j)];
  });
  std::vector<double> sorted(static_cast<std::size_t>(n));
  DenseMatrix vs(n);
  for (int j = 0; j < n; ++j) {
    sorted[static_cast<std::size_t>(j)] = out.values[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    for (int r = 0; r < n; ++r) vs.at(r, j) = v.at(r, order[static_cast<std::size_t>(j)]);
  }
  out.values = std::move(sorted);
  out.vectors = std::move(vs);
  return out;
}

DenseMatrix hermitian_function(const EigResult& eig, const std::function<cplx(double)>& f) {
  const int n = eig.vectors.n;
  DenseMatrix m(n);
  // V diag(f) V^dagger
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k)
        s += eig.vectors.at(r, k) * f(eig.values[static_cast<std::size_t>(k)]) *
             std::conj(eig.vectors.at(c, k));
      m.at(r, c) = s;
    }
  }
  return m;
}

namespace {

// LU solve with partial pivoting: X = A^{-1} B, in place over copies.
DenseMatrix lu_solve(DenseMatrix a, DenseMatrix b) {
  const int n = a.n;
  std::vector<int> piv(static_cast<std::size_t>(n));
  std::iota(piv.begin(), piv.end(), 0);
  for (int k = 0; k < n; ++k) {
    int pr = k;
    double best = std::abs(a.at(k, k));
    for (int r = k + 1; r < n; ++r) {
      const double m = std::abs(a.at(r, k));
      if (m > best) { best = m; pr = r; }
    }
    if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix");
    if (pr != k) {
      for (int c = 0; c < n; ++c) std::swap(a.at(k, c), a.at(pr, c));
      for (int c = 0; c < n; ++c) std::swap(b.at(k, c), b.at(pr, c));
    }
    const cplx pivot = a.at(k, k);
    for (int r = k + 1; r < n; ++r) {
      const cplx f = a.at(r, k) / pivot;
      if (f == 0.0) continue;
      a.at(r, k) = f;
      for (int c = k + 1; c < n; ++c) a.at(r, c) -= f * a.at(k, c);
      for (int c = 0; c < n; ++c) b.at(r, c) -= f * b.at(k, c);
    }
  }
  // back substitution
  for (int k = n - 1; k >= 0; --k) {
    const cplx pivot = a.at(k, k);
    for (int c = 0; c < n; ++c) {
      cplx s = b.at(k, c);
      for (int j = k + 1; j < n; ++j) s -= a.at(k, j) * b.at(j, c);
      b.at(k, c) = s / pivot;
    }
  }
  return b;
}

} // namespace

DenseMatrix pade_expm(const DenseMatrix& m) {
  // Pade-13 with scaling and squaring (Higham's coefficients).
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  const int n = m.n;
  const double theta13 = 5.371920351148152;
  int s = 0;
  const double nrm = m.one_norm();
  if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
  DenseMatrix a = m;
  if (s > 0) {
    const double f = std::ldexp(1.0, -s);
    for (cplx& v : a.a) v *= f;
  }
  const DenseMatrix i = DenseMatrix::identity(n);
  const DenseMatrix a2 = matmul(a, a);
  const DenseMatrix a4 = matmul(a2, a2);
  const DenseMatrix a6 = matmul(a2, a4);

  auto lin = [&](double c6, const DenseMatrix& x6, double c4, const DenseMatrix& x4,
                 double c2, const DenseMatrix& x2, double c0) {
    DenseMatrix r(n);
    for (std::size_t k = 0; k < r.a.size(); ++k)
      r.a[k] = c6 * x6.a[k] + c4 * x4.a[k] + c2 * x2.a[k] + c0 * i.a[k];
    return r;
  };

  DenseMatrix w1 = lin(b[13], a6, b[11], a4, b[9], a2, 0.0);
  DenseMatrix w2 = lin(b[7], a6, b[5], a4, b[3], a2, b[1]);
  DenseMatrix w = matmul(a6, w1);
  for (std::size_t k = 0; k < w.a.size(); ++k) w.a[k] += w2.a[k];
  DenseMatrix u = matmul(a, w);

  DenseMatrix z1 = lin(b[12], a6, b[10], a4, b[8], a2, 0.0);
  DenseMatrix z2 = lin(b[6], a6, b[4], a4, b[2], a2, b[0]);
  DenseMatrix v = matmul(a6, z1);
  for (std::size_t k = 0; k < v.a.size(); ++k) v.a[k] += z2.a[k];

  DenseMatrix num = v, den = v;
  for (std::size_t k = 0; k < num.a.size(); ++k) {
    num.a[k] += u.a[k];
    den.a[k] -= u.a[k];
  }
  DenseMatrix r = lu_solve(den, num);
  for (int k = 0; k < s; ++k) r = matmul(r, r);
  return r;
}

StateVector exp_apply(const SparseOperator& a, const StateVector& x, double tol) {
  if (static_cast<int>(x.size()) != a.dim())
    throw std::invalid_argument("exp_apply: vector/operator dimension mismatch");
  const double nrm = a.one_norm();
  int s = 0;
  if (nrm > 1.0) s = static_cast<int>(std::ceil(std::log2(nrm)));
  const int reps = 1 << s;
  const double f = std::ldexp(1.0, -s);

  StateVector w = x;
  StateVector term, next;
  for (int rep = 0; rep < reps; ++rep) {
    term = w;
    StateVector acc = w;
    for (int k = 1; k <= 64; ++k) {
      a.apply(term, next);
      const double fk = f / k;
      double tn = 0.0, an = 0.0;
      for (std::size_t j = 0; j < next.size(); ++j) {
        next[j] *= fk;
        acc[j] += next[j];
        tn += std::norm(next[j]);
        an += std::norm(acc[j]);
      }
      term.swap(next);
      if (tn <= tol * tol * std::max(an, 1e-300)) break;
    }
    w = std::move(acc);
  }
  return w;
}

double power_iteration_norm(const std::function<StateVector(const StateVector&)>& apply,
                            const std::function<StateVector(const StateVector&)>& apply_adjoint,
                            int dim_in, int max_iters, double tol, std::uint64_t seed) {
  if (dim_in <= 0) return 0.0;
  // deterministic pseudo-random start vector (splitmix64)
  StateVector v(static_cast<std::size_t>(dim_in));
  std::uint64_t z = seed;
  auto next_u64 = [&z]() {
    z += 0x9e3779b97f4a7c15ull;
    std::uint64_t t = z;
    t = (t ^ (t >> 30)) * 0xbf58476d1ce4e5b9ull;
    t = (t ^ (t >> 27)) * 0x94d049bb133111ebull;
    return t ^ (t >> 31);
  };
  for (auto& c : v) {
    const double re = static_cast<double>(next_u64() >> 11) * 0x1.0p-53 - 0.5;
    const double im = static_cast<double>(next_u64() >> 11) * 0x1.0p-53 - 0.5;
    c = cplx(re, im);
  }
  double nv = norm(v);
  if (nv == 0.0) return 0.0;
  for (auto& c : v) c /= nv;

  double sigma2 = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    StateVector w = apply_adjoint(apply(v));
    const double rayleigh = std::real(inner_product(w, v)); // = |A v|^2
    const double nw = norm(w);
    if (nw == 0.0) return 0.0;
    for (auto& c : w) c /= nw;
    v = std::move(w);
    if (it > 2 && std::abs(rayleigh - sigma2) <= tol * std::max(rayleigh, 1e-300)) {
      sigma2 = rayleigh;
      break;
    }
    sigma2 = rayleigh;
  }
  return std::sqrt(std::max(sigma2, 0.0));
}

} // namespace bosefock
