#include "doctest.h"

#include "pfdkit/error.hpp"
#include "pfdkit/linalg.hpp"
#include "support.hpp"

using namespace pfdkit;

TEST_CASE("det of the coefficient matrix of x, y, x+y") {
  // Rows are coefficient vectors; choose forms x and x+y for a square block.
  const RationalMatrix m{{1, 0}, {0, 1}, {1, 1}};
  const std::size_t rows[] = {2, 1};
  const std::size_t cols[] = {0, 1};
  CHECK(minor(m, rows, cols) == 1);
  const std::size_t rows2[] = {1, 2};
  CHECK(minor(m, rows2, cols) == -1);
  CHECK(det(RationalMatrix{{1, 2}, {3, 4}}) == -2);
  CHECK(det(RationalMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(det(RationalMatrix{{1, 2}, {2, 4}}) == 0);
  CHECK_THROWS_AS(det(m), DomainError);
}

TEST_CASE("rref and kernel") {
  const RationalMatrix a{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  const auto r = rref(a);
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1});
  CHECK(r.reduced == RationalMatrix{{1, 0, 1}, {0, 1, 1}, {0, 0, 0}});
  const auto k = kernel(a);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == RationalVector{-1, -1, 1});
  CHECK(a * std::span<const Rational>(k[0]) == RationalVector(3));
}

TEST_CASE("solve") {
  const RationalMatrix a{{1, 1}, {1, -1}};
  const RationalVector b{3, 1};
  CHECK(solve(a, b) == RationalVector{2, 1});
  const RationalMatrix under{{1, 1}};
  const RationalVector one{2};
  CHECK(solve(under, one) == RationalVector{2, 0});
  CHECK(solve_min_norm(under, one) == RationalVector{1, 1});
  const RationalMatrix inconsistent{{1, 1}, {2, 2}};
  const RationalVector bad{1, 3};
  CHECK_FALSE(solve(inconsistent, bad).has_value());
  CHECK_FALSE(solve_min_norm(inconsistent, bad).has_value());
  CHECK(inverse(a) * a == RationalMatrix::identity(2));
  CHECK_THROWS_AS(inverse(inconsistent), DomainError);
}

TEST_CASE("LinearSpan") {
  LinearSpan s(3);
  CHECK(s.add(RationalVector{1, 2, 0}));
  CHECK(s.add(RationalVector{0, 1, 1}));
  CHECK_FALSE(s.add(RationalVector{1, 3, 1}));
  CHECK(s.rank() == 2);
  CHECK(s.contains(RationalVector{2, 5, 1}));
  CHECK_FALSE(s.contains(RationalVector{0, 0, 1}));
}

TEST_CASE("random systems") {
  pfdkit::testing::Rng rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(rng.between(1, 8));
    const std::size_t cols = static_cast<std::size_t>(rng.between(1, 8));
    RationalMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = rng.rational(2);
    RationalVector x0(cols);
    for (auto& v : x0) v = rng.rational();
    const RationalVector b = a * std::span<const Rational>(x0);
    const auto x = solve(a, b);
    REQUIRE(x.has_value());
    CHECK(a * std::span<const Rational>(*x) == b);
    const auto m = solve_min_norm(a, b);
    REQUIRE(m.has_value());
    CHECK(a * std::span<const Rational>(*m) == b);
    // Minimal norm solutions are orthogonal to the kernel.
    for (const auto& k : kernel(a)) {
      Rational dot;
      for (std::size_t j = 0; j < cols; ++j) dot += k[j] * (*m)[j];
      CHECK(is_zero(dot));
      CHECK(a * std::span<const Rational>(k) == RationalVector(rows));
    }
    CHECK(rref(a).rank + kernel(a).size() == cols);
    if (rows == cols && !is_zero(det(a))) CHECK(inverse(a) * a == RationalMatrix::identity(rows));
  }
}

TEST_CASE("small documented cases") {
  const auto id = rref(RationalMatrix::identity(3));
  CHECK(id.rank == 3);
  CHECK(id.reduced == RationalMatrix::identity(3));
  CHECK(rref(RationalMatrix{{1, 0}, {0, 1}, {1, 1}}).rank == 2);
  CHECK(rref(RationalMatrix(2, 3)).rank == 0);
  CHECK(kernel(RationalMatrix::identity(3)).empty());
  CHECK(kernel(RationalMatrix{{1, 1}}) == std::vector<RationalVector>{{-1, 1}});
  const RationalVector b{4, 5, 6};
  CHECK(solve(RationalMatrix::identity(3), b) == b);
  CHECK(det(RationalMatrix::identity(4)) == 1);
  const std::size_t r01[] = {0, 1};
  CHECK(minor(RationalMatrix{{1, 0}, {1, 1}}, r01, r01) == 1);
  const std::size_t bad[] = {0};
  CHECK_THROWS_AS(minor(RationalMatrix{{1, 0}, {1, 1}}, r01, bad), DomainError);
}

TEST_CASE("coefficient matrix of pairwise products of x, y, x+y") {
  // Rows xy, x(x+y), y(x+y) against columns x^2, xy, y^2, expanded by hand.
  const RationalMatrix m{{0, 1, 0}, {1, 1, 0}, {0, 1, 1}};
  CHECK(det(m) == -1);
  const RationalMatrix a{{1, 0}, {0, 1}, {1, 1}};
  const std::size_t cols[] = {0, 1};
  Rational product = 1;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const std::size_t rows[] = {i, j};
      product *= minor(a, rows, cols);
    }
  CHECK(product == -1);
}

TEST_CASE("rref idempotence and det multiplicativity") {
  pfdkit::testing::Rng rng(555);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.between(1, 4));
    RationalMatrix a(n, n), b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = rng.rational(3);
        b(i, j) = rng.rational(3);
      }
    CHECK(det(a * b) == det(a) * det(b));
    CHECK(det(a.transposed()) == det(a));
    const auto r = rref(a);
    CHECK(rref(r.reduced).reduced == r.reduced);
  }
}
