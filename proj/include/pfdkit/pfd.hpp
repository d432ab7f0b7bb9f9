#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfdkit/decomp.hpp"
#include "pfdkit/ideal.hpp"
#include "pfdkit/matroid.hpp"
#include "pfdkit/parse.hpp"
#include "pfdkit/polynomial.hpp"

namespace pfdkit {

/// numerator / (forms[0] * ... * forms[n-1]). Duplicated forms are allowed.
class RationalFunction {
 public:
  RationalFunction(Polynomial numerator, std::vector<Polynomial> forms, Mode mode);
  static RationalFunction from_problem(const ProblemFile& p);

  const Polynomial& numerator() const { return numerator_; }
  const std::vector<Polynomial>& forms() const { return forms_; }
  const Polynomial& form(std::size_t i) const { return forms_.at(i); }
  Mode mode() const { return mode_; }
  const VarList& vars() const { return numerator_.vars(); }
  std::size_t size() const { return forms_.size(); }
  Arrangement arrangement() const;

 private:
  Polynomial numerator_;
  std::vector<Polynomial> forms_;
  Mode mode_;
};

struct ReducedExpression {
  RationalFunction function;
  std::vector<std::size_t> kept;     // original indices of the surviving forms
  std::vector<std::size_t> removed;  // original indices divided out
};

/// Divides the numerator by each form in turn whenever it is divisible.
ReducedExpression reduced_exp(const RationalFunction& rf);
bool is_fully_reduced(const RationalFunction& rf);

enum class PfdMethod { kGroebner, kLinear, kGeneric, kExternal };
enum class MethodChoice { kAuto, kGroebner, kLinear };
enum class PfdStatus { kMaximal, kFixedDegree, kCapped, kLowerBound, kIterative, kExternal };

std::string to_string(PfdMethod m);
std::string to_string(PfdStatus s);
PfdMethod parse_method(const std::string& s);
PfdStatus parse_status(const std::string& s);
MethodChoice parse_method_choice(const std::string& s);

/// Restricted generator set. A d-subset T is used when it is listed in
/// `allow` or contained in one of `subsets` (everything, when both are
/// empty) and T avoids `exclude`. Indices are 0-based.
struct GeneratorRestriction {
  std::vector<std::vector<std::size_t>> allow;
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> exclude;

  std::vector<IndexMask> masks(std::size_t n, int d, std::size_t cap) const;
  /// Restriction to a sub-arrangement: `kept` maps new indices to old ones.
  GeneratorRestriction restricted_to(const std::vector<std::size_t>& kept) const;
};

/// Lines "allow: i j k", "subset: i j ...", "exclude: i ...", 1-based; '#' comments.
GeneratorRestriction parse_restriction(const std::string& text, std::size_t n);

struct PfdOptions {
  std::optional<int> degree;      // fixed degree, no maximality search
  std::optional<int> max_degree;  // cap for the ascending search
  MethodChoice method = MethodChoice::kAuto;
  std::optional<GeneratorRestriction> restriction;
  /// Step size of iterative refinement; 0 disables it.
  int iterative_step = 0;
  std::size_t max_generators = 200000;
  std::size_t max_pairs = 0;
};

struct PfdTerm {
  Polynomial numerator;
  std::vector<std::size_t> denominator;  // sorted form indices, 0-based

  friend bool operator==(const PfdTerm&, const PfdTerm&) = default;
};

struct PfdResult {
  int degree = 0;
  std::vector<PfdTerm> terms;  // sorted by denominator
  PfdMethod method = PfdMethod::kLinear;
  PfdStatus status = PfdStatus::kMaximal;
};

/// Maximal-degree PFD of a fully reduced function (DomainError otherwise);
/// nullopt when no degree d >= 1 works.
std::optional<PfdResult> pfd(const RationalFunction& rf, const PfdOptions& options = {});

enum class CheckMethod { kFlats, kGroebner, kLinear };
CheckMethod parse_check_method(const std::string& s);

/// A degree-d PFD (deg c_J <= deg f - d) exists. rf need not be reduced.
/// kFlats uses exists_pfd_via_flats; the others decide membership of the
/// homogenized numerator in the homogenized d-fold ideal.
bool pfd_exists(const RationalFunction& rf, int d, CheckMethod method, std::size_t max_pairs = 0);

/// True when rf meets the preconditions of pfd_generic.
bool generic_applicable(const RationalFunction& rf);
/// Unique scalar PFD of degree n - rank + 1 for a generic arrangement.
PfdResult pfd_generic(const RationalFunction& rf);

/// Re-indexes denominators through `kept` (new index -> original index) and
/// raises the degree by the number of forms not kept.
PfdResult remap(PfdResult result, const std::vector<std::size_t>& kept, std::size_t original_size);

/// Sums terms with equal denominators, drops zeros, sorts.
std::vector<PfdTerm> merge_terms(std::vector<PfdTerm> terms);

struct PfdCheck {
  bool valid = true;
  std::string reason;
};

/// Recombines the terms and compares with the numerator; checks the degree
/// bound deg c_J <= deg f - n + |J|, |J| <= n - d and index ranges.
PfdCheck check_pfd(const PfdResult& result, const RationalFunction& rf);
bool verify_pfd(const PfdResult& result, const RationalFunction& rf);

/// Some degree n-1 PFD has a reducible term. Requires d = n-1 >= 1, pairwise
/// non-proportional forms and a degree-d PFD to exist (DomainError otherwise).
bool reducible_term_criterion(const RationalFunction& rf, int d);

}  // namespace pfdkit
