#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pfdkit/rational.hpp"

namespace pfdkit {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  RationalMatrix transposed() const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalVector operator*(std::span<const Rational> v) const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RrefResult {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form. Pivot choice: first nonzero entry of the column
/// at or below the current row.
RrefResult rref(RationalMatrix a);

/// Solves A x = b. Free variables are set to zero; absent when inconsistent.
std::optional<RationalVector> solve(const RationalMatrix& a, std::span<const Rational> b);

/// Solves A x = b returning the solution of least Euclidean norm, i.e. the
/// unique solution orthogonal to ker(A). Absent when inconsistent.
std::optional<RationalVector> solve_min_norm(const RationalMatrix& a, std::span<const Rational> b);

/// Standard free-variable basis of the null space, ordered by free column.
std::vector<RationalVector> kernel(const RationalMatrix& a);

Rational det(const RationalMatrix& a);
Rational minor(const RationalMatrix& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols);
RationalMatrix inverse(const RationalMatrix& a);

/// Incrementally maintained row echelon basis of a subspace of Q^n.
class LinearSpan {
 public:
  explicit LinearSpan(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }

  /// Adds `v`; returns false (and leaves the span unchanged) when v is already in the span.
  bool add(std::span<const Rational> v);
  bool contains(std::span<const Rational> v) const;

 private:
  RationalVector reduce(std::span<const Rational> v) const;

  std::size_t dim_;
  std::vector<RationalVector> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace pfdkit
