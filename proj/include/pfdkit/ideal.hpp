#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "pfdkit/groebner.hpp"
#include "pfdkit/matroid.hpp"
#include "pfdkit/polynomial.hpp"

namespace pfdkit {

/// Which d-fold products generate the ideal. `allowed`, when present, lists
/// the admissible index subsets (each of size d).
struct GeneratorSpec {
  int d = 1;
  std::optional<std::vector<IndexMask>> allowed;
  /// ResourceLimitError when more generators would be produced.
  std::size_t max_generators = 200000;
};

struct Generator {
  IndexMask indices = 0;
  Polynomial product;
};

/// Products of d distinct forms, lexicographic in the index subset. Products
/// that vanish identically (a zero form is involved) are dropped.
std::vector<Generator> dfold_generators(const Arrangement& a, const GeneratorSpec& spec);

/// Calls fn(mask) for every d-subset of [n] in lexicographic order of index lists.
void for_each_subset(std::size_t n, int d, const std::function<void(IndexMask)>& fn);

/// Ideal given by generators, with Groebner bases computed on demand and cached.
class IdealWithBasis {
 public:
  explicit IdealWithBasis(std::vector<Polynomial> generators, MonomialOrder order = {}, std::size_t max_pairs = 0);

  IdealWithBasis(IdealWithBasis&& other) noexcept;
  IdealWithBasis& operator=(IdealWithBasis&& other) noexcept;

  const std::vector<Polynomial>& generators() const { return generators_; }
  const MonomialOrder& order() const { return order_; }
  const VarList& vars() const { return vars_; }
  bool homogeneous() const { return homogeneous_; }

  /// Full reduced basis.
  const GroebnerBasis& groebner() const { return basis_for(std::nullopt); }
  /// Basis sufficient for reducing f: truncated at deg f when everything is homogeneous.
  const GroebnerBasis& basis_for(const Polynomial& f) const;

 private:
  const GroebnerBasis& basis_for(std::optional<int> limit) const;

  std::vector<Polynomial> generators_;
  MonomialOrder order_;
  std::size_t max_pairs_;
  VarList vars_;
  bool homogeneous_ = true;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<GroebnerBasis>> cache_;  // key -1: untruncated
};

GroebnerBasis::Division normal_form(const Polynomial& f, const IdealWithBasis& ideal);
bool member(const Polynomial& f, const IdealWithBasis& ideal);
/// Coefficients c_k with f = sum c_k * generator_k, or nullopt for non-members.
std::optional<std::vector<Polynomial>> express_in_generators(const Polynomial& f, const IdealWithBasis& ideal);

enum class SolveMode {
  kFreeZero,  // free variables set to zero
  kMinNorm,   // least Euclidean norm coefficient vector
};

/// Coefficients c_k of degree <= bound with f = sum c_k * generators[k], by an
/// exact linear solve. For homogeneous f and generators only the degree
/// deg f - deg g_k part of each c_k is used.
std::optional<std::vector<Polynomial>> express_bounded_degree(const Polynomial& f,
                                                             const std::vector<Polynomial>& generators, int bound,
                                                             SolveMode mode = SolveMode::kFreeZero);
std::optional<std::vector<Polynomial>> express_bounded_degree(const Polynomial& f, const Arrangement& a,
                                                             const GeneratorSpec& spec, int bound,
                                                             SolveMode mode = SolveMode::kFreeZero);

/// I intersect J through t*I + (1-t)*J and elimination of t.
IdealWithBasis intersect(const IdealWithBasis& i, const IdealWithBasis& j);
/// Mutual membership of generators.
bool ideal_equal(const IdealWithBasis& i, const IdealWithBasis& j);

/// Generators of (I_S)^k where I_S is spanned by `forms` (all of degree <= 1).
std::vector<Polynomial> linear_ideal_power(const std::vector<Polynomial>& forms, int k);

/// Largest k with f in <forms>^k (the ideal must be proper). Zero f gives nullopt (infinite order).
/// Throws DomainError when the forms have no common zero.
std::optional<int> linear_vanishing_order(const Polynomial& f, const std::vector<Polynomial>& forms);

/// f in (I_S)^k for the forms of S.
bool power_linear_membership(const Polynomial& f, const Arrangement& a, const FlatSet& s, int k);

}  // namespace pfdkit
