#include "bosefock/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bosefock {

SparseOperator::SparseOperator(int dim) : dim_(dim) {
  if (dim < 0) throw std::invalid_argument("SparseOperator: negative dimension");
  rows_.resize(static_cast<std::size_t>(dim));
  dirty_.assign(static_cast<std::size_t>(dim), 0);
}

SparseOperator SparseOperator::identity(int dim) {
  SparseOperator a(dim);
  for (int i = 0; i < dim; ++i) a.rows_[static_cast<std::size_t>(i)].push_back({i, 1.0});
  return a;
}

std::size_t SparseOperator::nnz() const {
  normalize_all();
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

void SparseOperator::add(int r, int c, cplx v) {
  if (r < 0 || r >= dim_ || c < 0 || c >= dim_)
    throw std::out_of_range("SparseOperator::add: index (" + std::to_string(r) + "," +
                            std::to_string(c) + ") outside dim " + std::to_string(dim_));
  auto& row = rows_[static_cast<std::size_t>(r)];
  if (!row.empty() && row.back().first == c) {
    row.back().second += v; // common assembly pattern: repeated same cell
    return;
  }
  if (!row.empty() && row.back().first > c) dirty_[static_cast<std::size_t>(r)] = 1;
  row.push_back({c, v});
}

void SparseOperator::normalize_row(int r) const {
  auto& row = rows_[static_cast<std::size_t>(r)];
  std::sort(row.begin(), row.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (w > 0 && row[w - 1].first == row[i].first) {
      row[w - 1].second += row[i].second;
    } else {
      row[w++] = row[i];
    }
  }
  row.resize(w);
  dirty_[static_cast<std::size_t>(r)] = 0;
}

void SparseOperator::normalize_all() const {
  for (int r = 0; r < dim_; ++r)
    if (dirty_[static_cast<std::size_t>(r)]) normalize_row(r);
}

cplx SparseOperator::entry(int r, int c) const {
  if (r < 0 || r >= dim_ || c < 0 || c >= dim_)
    throw std::out_of_range("SparseOperator::entry: index outside dim");
  if (dirty_[static_cast<std::size_t>(r)]) normalize_row(r);
  const auto& row = rows_[static_cast<std::size_t>(r)];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, int col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return 0.0;
}

const std::vector<SparseOperator::Entry>& SparseOperator::row(int r) const {
  if (r < 0 || r >= dim_) throw std::out_of_range("SparseOperator::row: index outside dim");
  if (dirty_[static_cast<std::size_t>(r)]) normalize_row(r);
  return rows_[static_cast<std::size_t>(r)];
}

void SparseOperator::apply(const StateVector& x, StateVector& y) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("SparseOperator::apply: vector size " +
                                std::to_string(x.size()) + " != dim " + std::to_string(dim_));
  y.assign(static_cast<std::size_t>(dim_), 0.0);
  for (int r = 0; r < dim_; ++r) {
    cplx acc = 0.0;
    for (const Entry& e : rows_[static_cast<std::size_t>(r)])
      acc += e.second * x[static_cast<std::size_t>(e.first)];
    y[static_cast<std::size_t>(r)] = acc;
  }
}

StateVector SparseOperator::apply(const StateVector& x) const {
  StateVector y;
  apply(x, y);
  return y;
}

SparseOperator SparseOperator::adjoint() const {
  normalize_all();
  SparseOperator a(dim_);
  for (int r = 0; r < dim_; ++r)
    for (const Entry& e : rows_[static_cast<std::size_t>(r)])
      a.add(e.first, r, std::conj(e.second));
  return a;
}

SparseOperator SparseOperator::transpose() const {
  normalize_all();
  SparseOperator a(dim_);
  for (int r = 0; r < dim_; ++r)
    for (const Entry& e : rows_[static_cast<std::size_t>(r)]) a.add(e.first, r, e.second);
  return a;
}

void SparseOperator::scale(cplx s) {
  for (auto& row : rows_)
    for (Entry& e : row) e.second *= s;
}

SparseOperator SparseOperator::scaled(cplx s) const {
  SparseOperator a = *this;
  a.scale(s);
  return a;
}

void SparseOperator::prune(double tol) {
  for (int r = 0; r < dim_; ++r) {
    if (dirty_[static_cast<std::size_t>(r)]) normalize_row(r);
    auto& row = rows_[static_cast<std::size_t>(r)];
    row.erase(std::remove_if(row.begin(), row.end(),
                             [tol](const Entry& e) { return std::abs(e.second) <= tol; }),
              row.end());
  }
}

cplx SparseOperator::trace() const {
  cplx t = 0.0;
  for (int r = 0; r < dim_; ++r) t += entry(r, r);
  return t;
}

double SparseOperator::frobenius_norm() const {
  normalize_all();
  double s = 0.0;
  for (const auto& row : rows_)
    for (const Entry& e : row) s += std::norm(e.second);
  return std::sqrt(s);
}

double SparseOperator::max_abs_entry() const {
  normalize_all();
  double m = 0.0;
  for (const auto& row : rows_)
    for (const Entry& e : row) m = std::max(m, std::abs(e.second));
  return m;
}

double SparseOperator::one_norm() const {
  normalize_all();
  std::vector<double> col(static_cast<std::size_t>(dim_), 0.0);
  for (const auto& row : rows_)
    for (const Entry& e : row) col[static_cast<std::size_t>(e.first)] += std::abs(e.second);
  double m = 0.0;
  for (double v : col) m = std::max(m, v);
  return m;
}

SparseOperator SparseOperator::operator+(const SparseOperator& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("SparseOperator::+: dimension mismatch");
  normalize_all();
  o.normalize_all();
  SparseOperator a = *this;
  for (int r = 0; r < dim_; ++r) {
    for (const Entry& e : o.rows_[static_cast<std::size_t>(r)]) a.add(r, e.first, e.second);
  }
  return a;
}

SparseOperator SparseOperator::operator-(const SparseOperator& o) const {
  return *this + o.scaled(-1.0);
}

SparseOperator SparseOperator::operator*(const SparseOperator& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("SparseOperator::*: dimension mismatch");
  normalize_all();
  o.normalize_all();
  SparseOperator a(dim_);
  // row r of result = sum over entries (r,k) of this times row k of o, with a
  // dense scratch accumulator per row.
  std::vector<cplx> scratch(static_cast<std::size_t>(dim_), 0.0);
  std::vector<int> touched;
  for (int r = 0; r < dim_; ++r) {
    touched.clear();
    for (const Entry& e : rows_[static_cast<std::size_t>(r)]) {
      for (const Entry& f : o.rows_[static_cast<std::size_t>(e.first)]) {
        cplx& cell = scratch[static_cast<std::size_t>(f.first)];
        if (cell == 0.0) touched.push_back(f.first);
        cell += e.second * f.second;
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    auto& row = a.rows_[static_cast<std::size_t>(r)];
    row.reserve(touched.size());
    for (int c : touched) {
      row.push_back({c, scratch[static_cast<std::size_t>(c)]});
      scratch[static_cast<std::size_t>(c)] = 0.0;
    }
  }
  return a;
}

double frobenius_distance(const SparseOperator& a, const SparseOperator& b) {
  return (a - b).frobenius_norm();
}

SparseOperator restrict_levels(const TruncatedBasis& basis, const SparseOperator& a,
                               int row_guard, int col_guard) {
  if (a.dim() != basis.dim())
    throw std::invalid_argument("restrict_levels: operator/basis dimension mismatch");
  SparseOperator out(a.dim());
  for (int r = 0; r < a.dim(); ++r) {
    if (row_guard >= 0 && basis.level(r) > row_guard) continue;
    for (const auto& e : a.row(r)) {
      if (col_guard >= 0 && basis.level(e.first) > col_guard) continue;
      out.add(r, e.first, e.second);
    }
  }
  return out;
}

} // namespace bosefock
