#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfdkit/linalg.hpp"
#include "pfdkit/mode.hpp"
#include "pfdkit/polynomial.hpp"

namespace pfdkit {

/// Subset of [n] as a bit mask; bit i stands for form i (0-based).
using IndexMask = std::uint64_t;

inline constexpr std::size_t kMaxForms = 64;

IndexMask to_mask(const std::vector<std::size_t>& indices);
std::vector<std::size_t> to_indices(IndexMask mask);
int popcount(IndexMask mask);

/// Ordered list of linear forms. In affine mode forms may carry constant
/// terms; the matroid of an affine arrangement is that of its homogenization.
class Arrangement {
 public:
  Arrangement(VarList vars, std::vector<Polynomial> forms, Mode mode, bool allow_zero_forms = false);

  const VarList& vars() const { return vars_; }
  const std::vector<Polynomial>& forms() const { return forms_; }
  const Polynomial& form(std::size_t i) const { return forms_.at(i); }
  Mode mode() const { return mode_; }
  std::size_t size() const { return forms_.size(); }
  IndexMask ground_set() const;

  /// Rows are coefficient vectors; affine mode appends the constant column.
  const RationalMatrix& coefficients() const { return coefficients_; }

  /// Projective arrangement in vars + {new_var}.
  Arrangement homogenized(const std::string& new_var) const;

  std::size_t rank_of_subset(IndexMask s) const;
  std::size_t rank_of_subset(const std::vector<std::size_t>& s) const;
  std::size_t rank() const { return rank_of_subset(ground_set()); }
  IndexMask closure(IndexMask s) const;
  std::vector<std::size_t> closure(const std::vector<std::size_t>& s) const;
  bool is_flat(IndexMask s) const { return closure(s) == s; }

 private:
  void check_mask(IndexMask s) const;

  VarList vars_;
  std::vector<Polynomial> forms_;
  Mode mode_;
  RationalMatrix coefficients_;
};

struct FlatSet {
  IndexMask mask = 0;
  std::vector<std::size_t> indices;  // sorted, 0-based

  std::size_t size() const { return indices.size(); }
  friend bool operator==(const FlatSet& a, const FlatSet& b) { return a.mask == b.mask; }
  friend bool operator<(const FlatSet& a, const FlatSet& b) { return a.indices < b.indices; }
};

FlatSet make_flat(IndexMask mask);

/// All flats with at least t elements, sorted lexicographically by index list.
/// t = 0 includes the closure of the empty set.
std::vector<FlatSet> flats_min_size(const Arrangement& a, std::size_t t);

/// Forms x_i - x_j (i < j) in variables x1..xr, ordered lexicographically in (i, j).
Arrangement braid_arrangement(int r);

/// Index of x_i - x_j in braid_arrangement(r), 0-based i < j.
std::size_t braid_index(int r, int i, int j);

/// Block sizes of the set partition of [r] induced by a braid flat, weakly decreasing.
class Partition;
Partition braid_flat_type(int r, IndexMask flat);

class Partition {
 public:
  /// Throws DomainError unless the parts are positive and weakly decreasing.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int total() const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of r, in reverse lexicographic order starting with (r).
std::vector<Partition> partitions_of(int r);

/// Number of braid hyperplanes in a flat of type lambda: sum of binom(lambda_i, 2).
int partition_flat_size(const Partition& lambda);

/// True when lambda dominates mu. Throws DomainError for different totals.
bool dominance_leq(const Partition& mu, const Partition& lambda);

}  // namespace pfdkit
