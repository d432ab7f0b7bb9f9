#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfdkit/linalg.hpp"
#include "pfdkit/monomial.hpp"
#include "pfdkit/rational.hpp"

namespace pfdkit {

/// Ordered, immutable list of ring variable names shared by polynomials of one ring.
using VarList = std::shared_ptr<const std::vector<std::string>>;

/// Validates names (`[A-Za-z_][A-Za-z0-9_]*`, unique, at most kMaxVariables).
VarList make_vars(std::vector<std::string> names);
bool same_ring(const VarList& a, const VarList& b);
bool is_identifier(const std::string& s);
/// `base`, extended with underscores until it is not among `vars`.
std::string fresh_variable(const VarList& vars, std::string base);

/// Total degree; std::nullopt stands for the degree of the zero polynomial (-infinity).
using Degree = std::optional<int>;

struct Term {
  Monomial monomial;
  Rational coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivariate polynomial over Q. Terms are kept in descending graded
/// reverse lexicographic order without zero coefficients, so equal
/// polynomials have identical term vectors.
class Polynomial {
 public:
  /// Zero polynomial of an empty ring.
  Polynomial();
  explicit Polynomial(VarList vars);

  static Polynomial constant(VarList vars, const Rational& c);
  static Polynomial variable(VarList vars, std::size_t index);
  /// Combines like terms, drops zeros and sorts.
  static Polynomial from_terms(VarList vars, std::vector<Term> terms);

  const VarList& vars() const { return vars_; }
  std::size_t num_vars() const { return vars_->size(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_homogeneous() const;
  Degree total_degree() const;
  const Term& leading_term() const { return terms_.front(); }
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  /// Lowest total degree of a term; nullopt for zero.
  Degree min_degree() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scaled(const Rational& c) const;
  Polynomial times_term(const Monomial& m, const Rational& c) const;
  Polynomial pow(int e) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return same_ring(a.vars_, b.vars_) && a.terms_ == b.terms_;
  }

 private:
  void check_ring(const Polynomial& o) const;

  VarList vars_;
  std::vector<Term> terms_;
};

enum class ArithOp { kAdd, kSub, kMul };

/// Exact ring operation; throws DomainError on mismatched ambient variables.
Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op);

Degree total_degree(const Polynomial& f);

/// Homogenizes to degree deg(f) with a new trailing variable `new_var`.
Polynomial homogenize(const Polynomial& f, const std::string& new_var);
/// Homogenizes into an existing ring whose last variable is the homogenizing one.
Polynomial homogenize_into(const Polynomial& f, const VarList& extended, int degree);
/// Sets `var` to 1 and removes it from the ring.
Polynomial dehomogenize(const Polynomial& f, const std::string& var);

/// Returns f(M x + p), where variable i is replaced by sum_j M(i,j) x_j + p_i.
Polynomial substitute_linear(const Polynomial& f, const RationalMatrix& m, std::span<const Rational> p);

/// Returns g with f = g * l exactly, or nullopt when l does not divide f.
/// Throws DomainError when l is zero, constant or of degree > 1.
std::optional<Polynomial> divide_by_linear(const Polynomial& f, const Polynomial& l);

/// Homogeneous components in ascending degree.
std::vector<std::pair<int, Polynomial>> homogeneous_components(const Polynomial& f);

/// Re-expresses f in ring `target`, mapping variable i of f to variable index_map[i].
Polynomial embed(const Polynomial& f, const VarList& target, std::span<const std::size_t> index_map);

/// Linear coefficient vector of a polynomial of degree <= 1 (length num_vars),
/// followed by the constant term when `with_constant`.
RationalVector linear_coefficients(const Polynomial& l, bool with_constant);
Polynomial linear_form(const VarList& vars, std::span<const Rational> coeffs, const Rational& constant = 0);

/// Canonical text rendering: descending terms, `p` or `p/q` coefficients,
/// explicit `*` and `^`, e.g. `-6*x + 13*y`.
std::string to_string(const Polynomial& f);

}  // namespace pfdkit
