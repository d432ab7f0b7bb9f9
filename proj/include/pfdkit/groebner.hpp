#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "pfdkit/order.hpp"
#include "pfdkit/polynomial.hpp"

namespace pfdkit {

struct GroebnerOptions {
  /// For homogeneous generators under a graded order: skip every pair whose
  /// lcm has larger degree. The result is then a basis only up to that degree.
  std::optional<int> degree_limit;
  /// Abort with ResourceLimitError after this many pairs (0 = unlimited).
  std::size_t max_pairs = 0;
};

struct GroebnerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
};

/// Reduced Groebner basis (Buchberger with the Gebauer-Moeller criteria and
/// the normal selection strategy) that remembers how each basis element was
/// derived from the input generators.
class GroebnerBasis {
 public:
  GroebnerBasis();

  static GroebnerBasis compute(const std::vector<Polynomial>& generators, const MonomialOrder& order,
                               const GroebnerOptions& options = {});

  /// Monic basis elements, sorted by increasing leading monomial.
  const std::vector<Polynomial>& elements() const;
  /// Leading monomial of element i under order().
  const Monomial& leading_monomial(std::size_t i) const;
  const MonomialOrder& order() const;
  std::size_t num_generators() const;
  std::optional<int> degree_limit() const;
  const GroebnerStats& stats() const;

  struct Division {
    Polynomial remainder;
    std::vector<Polynomial> quotients;  // one per element
  };

  /// Division by the basis. The leading remaining monomial is always reduced
  /// by the first element (in elements() order) whose leading monomial
  /// divides it, so remainder and quotients are linear in f.
  Division divide(const Polynomial& f) const;
  Polynomial normal_form(const Polynomial& f) const { return divide(f).remainder; }

  /// Rewrites quotients over elements() as coefficients over the input generators.
  std::vector<Polynomial> lift(const std::vector<Polynomial>& quotients) const;
  /// Coefficients of element i over the input generators.
  std::vector<Polynomial> cofactors(std::size_t i) const;

 struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

}  // namespace pfdkit
