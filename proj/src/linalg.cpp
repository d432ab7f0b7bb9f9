#include "pfdkit/linalg.hpp"

#include <algorithm>

#include "pfdkit/error.hpp"

namespace pfdkit {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DomainError("row length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw DomainError("matrix product dimension mismatch");
  RationalMatrix p(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (is_zero(a)) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) p(i, j) += a * other(k, j);
    }
  return p;
}

RationalVector RationalMatrix::operator*(std::span<const Rational> v) const {
  if (v.size() != cols_) throw DomainError("matrix-vector dimension mismatch");
  RationalVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (!is_zero(v[k])) out[i] += (*this)(i, k) * v[k];
  return out;
}

namespace {

// Gauss-Jordan elimination in place; eliminates only within columns [0, col_limit).
std::vector<std::size_t> eliminate(RationalMatrix& m, std::size_t col_limit) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  Rational factor;
  std::vector<std::size_t> nonzero;
  for (std::size_t c = 0; c < col_limit && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) swap(m(p, j), m(row, j));
    if (m(row, c) != 1) {
      const Rational inv = 1 / m(row, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(row, j) *= inv;
    }
    nonzero.clear();
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!is_zero(m(row, j))) nonzero.push_back(j);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, c))) continue;
      factor = m(r, c);
      for (std::size_t j : nonzero) m(r, j) -= factor * m(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

RrefResult rref(RationalMatrix a) {
  RrefResult out;
  out.pivots = eliminate(a, a.cols());
  out.rank = out.pivots.size();
  out.reduced = std::move(a);
  return out;
}

std::optional<RationalVector> solve(const RationalMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw DomainError("solve: right-hand side length mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto pivots = eliminate(aug, a.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    if (!is_zero(aug(r, a.cols()))) return std::nullopt;
  RationalVector x(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  return x;
}

std::optional<RationalVector> solve_min_norm(const RationalMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw DomainError("solve_min_norm: right-hand side length mismatch");
  const std::size_t n = a.cols();
  RationalMatrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  const auto pivots = eliminate(aug, n);
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    if (!is_zero(aug(r, n))) return std::nullopt;
  RationalVector x(n);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  if (free.empty()) return x;

  if (free.size() <= pivots.size()) {
    // Project the particular solution off the kernel: x - K (K^T K)^{-1} K^T x.
    const std::size_t m = free.size();
    std::vector<RationalVector> basis(m, RationalVector(n));
    for (std::size_t k = 0; k < m; ++k) {
      basis[k][free[k]] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i) basis[k][pivots[i]] = -aug(i, free[k]);
    }
    auto dot = [&](const RationalVector& u, const RationalVector& v) {
      Rational s;
      for (std::size_t c = 0; c < n; ++c)
        if (!is_zero(u[c]) && !is_zero(v[c])) s += u[c] * v[c];
      return s;
    };
    RationalMatrix gram(m, m);
    RationalVector rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        gram(i, j) = dot(basis[i], basis[j]);
        gram(j, i) = gram(i, j);
      }
      rhs[i] = dot(basis[i], x);
    }
    const auto z = solve(gram, rhs);
    for (std::size_t k = 0; k < m; ++k) {
      if (is_zero((*z)[k])) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (!is_zero(basis[k][c])) x[c] -= (*z)[k] * basis[k][c];
    }
    return x;
  }

  // Few independent rows: x = A_I^T y with (A_I A_I^T) y = b_I.
  const auto independent = rref(a.transposed()).pivots;
  const std::size_t k = independent.size();
  RationalMatrix gram(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      Rational s;
      for (std::size_t c = 0; c < n; ++c) {
        const Rational& u = a(independent[i], c);
        const Rational& v = a(independent[j], c);
        if (!is_zero(u) && !is_zero(v)) s += u * v;
      }
      gram(i, j) = s;
      gram(j, i) = s;
    }
  RationalVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) rhs[i] = b[independent[i]];
  const auto y = solve(gram, rhs);
  if (!y) return std::nullopt;
  RationalVector out(n);
  for (std::size_t i = 0; i < k; ++i) {
    if (is_zero((*y)[i])) continue;
    for (std::size_t c = 0; c < n; ++c)
      if (!is_zero(a(independent[i], c))) out[c] += (*y)[i] * a(independent[i], c);
  }
  return out;
}

std::vector<RationalVector> kernel(const RationalMatrix& a) {
  const auto r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(a.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational det(const RationalMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("det: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination; every division below is exact.
  RationalMatrix m = a;
  Rational prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(m(p, k))) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) swap(m(p, j), m(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational minor(const RationalMatrix& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  if (rows.size() != cols.size()) throw DomainError("minor: row and column index counts differ");
  RationalMatrix sub(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (rows[i] >= a.rows() || cols[j] >= a.cols()) throw DomainError("minor: index out of range");
      sub(i, j) = a(rows[i], cols[j]);
    }
  return det(sub);
}

RationalMatrix inverse(const RationalMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("inverse: matrix is not square");
  const std::size_t n = a.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = 1;
  }
  if (eliminate(aug, n).size() != n) throw DomainError("inverse: matrix is singular");
  RationalMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

RationalVector LinearSpan::reduce(std::span<const Rational> v) const {
  if (v.size() != dim_) throw DomainError("LinearSpan: vector dimension mismatch");
  RationalVector w(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Rational f = w[pivots_[i]];
    if (is_zero(f)) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (!is_zero(basis_[i][j])) w[j] -= f * basis_[i][j];
  }
  return w;
}

bool LinearSpan::contains(std::span<const Rational> v) const {
  const auto w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](const Rational& q) { return is_zero(q); });
}

bool LinearSpan::add(std::span<const Rational> v) {
  auto w = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && is_zero(w[p])) ++p;
  if (p == dim_) return false;
  const Rational inv = 1 / w[p];
  for (auto& x : w) x *= inv;
  // Keep the basis fully reduced so that reduce() needs one pass.
  for (auto& row : basis_) {
    const Rational f = row[p];
    if (is_zero(f)) continue;
    for (std::size_t j = 0; j < dim_; ++j) row[j] -= f * w[j];
  }
  basis_.push_back(std::move(w));
  pivots_.push_back(p);
  return true;
}

}  // namespace pfdkit
