#pragma once

#include <cstddef>
#include <vector>

#include "pfdkit/monomial.hpp"

namespace pfdkit {

/// Term order used by the Groebner engine. Polynomials themselves are always
/// stored in graded reverse lexicographic order; other orders are only used
/// inside Groebner computations.
class MonomialOrder {
 public:
  enum class Kind { kGrevlex, kLex, kBlockElimination };

  /// Graded reverse lexicographic with the declared variable order.
  MonomialOrder() = default;

  static MonomialOrder grevlex(std::vector<std::size_t> precedence = {});
  static MonomialOrder lex(std::vector<std::size_t> precedence = {});
  /// Eliminates the first `k` variables (by precedence): graded reverse lex on
  /// that block, ties broken by graded reverse lex on the rest.
  static MonomialOrder block_elimination(std::size_t k, std::vector<std::size_t> precedence = {});

  Kind kind() const { return kind_; }
  std::size_t block_size() const { return block_; }
  const std::vector<std::size_t>& precedence() const { return precedence_; }

  /// >0 when a > b, 0 when equal, <0 otherwise.
  int compare(const Monomial& a, const Monomial& b) const;

  bool is_graded() const { return kind_ == Kind::kGrevlex; }

 private:
  std::size_t var(std::size_t position) const {
    return precedence_.empty() ? position : precedence_[position];
  }
  int grevlex_range(const Monomial& a, const Monomial& b, std::size_t begin, std::size_t end) const;

  Kind kind_ = Kind::kGrevlex;
  std::size_t block_ = 0;
  std::vector<std::size_t> precedence_;
};

}  // namespace pfdkit
