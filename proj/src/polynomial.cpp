#include "pfdkit/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "pfdkit/error.hpp"

namespace pfdkit {

namespace {

bool term_greater(const Term& a, const Term& b) { return compare_grevlex(a.monomial, b.monomial) > 0; }

const VarList& empty_ring() {
  static const VarList vars = std::make_shared<const std::vector<std::string>>();
  return vars;
}

// Merges two descending term lists: a + sign*b.
std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = -1;
    else if (j == b.size()) c = 1;
    else c = compare_grevlex(a[i].monomial, b[j].monomial);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].monomial, sign > 0 ? b[j].coeff : Rational(-b[j].coeff)});
      ++j;
    } else {
      Rational s = a[i].coeff;
      if (sign > 0) s += b[j].coeff;
      else s -= b[j].coeff;
      if (!pfdkit::is_zero(s)) out.push_back({a[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

std::string fresh_variable(const VarList& vars, std::string base) {
  while (std::find(vars->begin(), vars->end(), base) != vars->end()) base += "_";
  return base;
}

VarList make_vars(std::vector<std::string> names) {
  if (names.size() > kMaxVariables) throw InputError("too many variables (limit 16)");
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (!is_identifier(n)) throw InputError("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw InputError("duplicate variable name '" + n + "'");
  }
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_ring(const VarList& a, const VarList& b) { return a == b || *a == *b; }

Polynomial::Polynomial() : vars_(empty_ring()) {}

Polynomial::Polynomial(VarList vars) : vars_(std::move(vars)) {}

Polynomial Polynomial::constant(VarList vars, const Rational& c) {
  Polynomial p(std::move(vars));
  if (!pfdkit::is_zero(c)) p.terms_.push_back({Monomial(p.num_vars()), c});
  return p;
}

Polynomial Polynomial::variable(VarList vars, std::size_t index) {
  Polynomial p(std::move(vars));
  if (index >= p.num_vars()) throw DomainError("variable index out of range");
  Monomial m(p.num_vars());
  m.set(index, 1);
  p.terms_.push_back({m, Rational(1)});
  return p;
}

Polynomial Polynomial::from_terms(VarList vars, std::vector<Term> terms) {
  Polynomial p(std::move(vars));
  for (const auto& t : terms)
    if (t.monomial.size() != p.num_vars()) throw DomainError("monomial length differs from ring size");
  std::sort(terms.begin(), terms.end(), term_greater);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
      if (pfdkit::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
    } else if (!pfdkit::is_zero(t.coeff)) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.front().monomial.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.monomial.degree() == d; });
}

Degree Polynomial::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().monomial.degree();
}

Degree Polynomial::min_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.back().monomial.degree();
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return 0;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return compare_grevlex(t.monomial, key) > 0; });
  if (it != terms_.end() && it->monomial == m) return it->coeff;
  return 0;
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (!same_ring(vars_, o.vars_)) throw DomainError("polynomials live in different rings");
}

Polynomial Polynomial::operator-() const {
  Polynomial p(vars_);
  p.terms_ = terms_;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_ring(o);
  Polynomial p(vars_);
  p.terms_ = merge_add(terms_, o.terms_, 1);
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_ring(o);
  Polynomial p(vars_);
  p.terms_ = merge_add(terms_, o.terms_, -1);
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_ring(o);
  if (terms_.size() == 1) return o.times_term(terms_[0].monomial, terms_[0].coeff);
  if (o.terms_.size() == 1) return times_term(o.terms_[0].monomial, o.terms_[0].coeff);
  Polynomial p(vars_);
  if (terms_.empty() || o.terms_.empty()) return p;
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) acc[a.monomial * b.monomial] += a.coeff * b.coeff;
  p.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!pfdkit::is_zero(c)) p.terms_.push_back({m, std::move(c)});
  std::sort(p.terms_.begin(), p.terms_.end(), term_greater);
  return p;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial p(vars_);
  if (pfdkit::is_zero(c)) return p;
  p.terms_ = terms_;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Polynomial Polynomial::times_term(const Monomial& m, const Rational& c) const {
  Polynomial p(vars_);
  if (pfdkit::is_zero(c)) return p;
  p.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the grevlex order.
  for (const auto& t : terms_) p.terms_.push_back({t.monomial * m, t.coeff * c});
  return p;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw DomainError("negative polynomial exponent");
  Polynomial result = constant(vars_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op) {
  switch (op) {
    case ArithOp::kAdd: return a + b;
    case ArithOp::kSub: return a - b;
    case ArithOp::kMul: return a * b;
  }
  return a;
}

Degree total_degree(const Polynomial& f) { return f.total_degree(); }

Polynomial homogenize_into(const Polynomial& f, const VarList& extended, int degree) {
  if (extended->size() != f.num_vars() + 1) throw DomainError("homogenize: target ring must add one variable");
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    if (t.monomial.degree() > degree) throw DomainError("homogenize: degree below a term degree");
    terms.push_back({t.monomial.extended(degree - t.monomial.degree()), t.coeff});
  }
  return Polynomial::from_terms(extended, std::move(terms));
}

Polynomial homogenize(const Polynomial& f, const std::string& new_var) {
  auto names = *f.vars();
  if (std::find(names.begin(), names.end(), new_var) != names.end())
    throw DomainError("homogenize: variable '" + new_var + "' already in the ring");
  names.push_back(new_var);
  const auto ring = make_vars(std::move(names));
  return homogenize_into(f, ring, f.total_degree().value_or(0));
}

Polynomial dehomogenize(const Polynomial& f, const std::string& var) {
  const auto& names = *f.vars();
  const auto it = std::find(names.begin(), names.end(), var);
  if (it == names.end()) throw DomainError("dehomogenize: variable '" + var + "' not in the ring");
  const std::size_t k = static_cast<std::size_t>(it - names.begin());
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (i != k) rest.push_back(names[i]);
  const auto ring = make_vars(std::move(rest));
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m(ring->size());
    for (std::size_t i = 0, j = 0; i < names.size(); ++i)
      if (i != k) m.set(j++, t.monomial[i]);
    terms.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

Polynomial substitute_linear(const Polynomial& f, const RationalMatrix& m, std::span<const Rational> p) {
  const std::size_t n = f.num_vars();
  if (m.rows() != n || m.cols() != n || p.size() != n) throw DomainError("substitute_linear: dimension mismatch");
  if (pfdkit::is_zero(det(m))) throw DomainError("substitute_linear: singular matrix");
  std::vector<Polynomial> image;
  image.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector row(m.row(i).begin(), m.row(i).end());
    image.push_back(linear_form(f.vars(), row, p[i]));
  }
  // powers[i][e] = image[i]^e, filled on demand.
  std::vector<std::vector<Polynomial>> powers(n);
  auto power = [&](std::size_t i, int e) -> const Polynomial& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(Polynomial::constant(f.vars(), 1));
    while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * image[i]);
    return pw[e];
  };
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  for (const auto& t : f.terms()) {
    Polynomial prod = Polynomial::constant(f.vars(), t.coeff);
    for (std::size_t i = 0; i < n; ++i)
      if (t.monomial[i] > 0) prod = prod * power(i, t.monomial[i]);
    for (const auto& pt : prod.terms()) acc[pt.monomial] += pt.coeff;
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [mono, c] : acc) terms.push_back({mono, std::move(c)});
  return Polynomial::from_terms(f.vars(), std::move(terms));
}

std::optional<Polynomial> divide_by_linear(const Polynomial& f, const Polynomial& l) {
  if (!same_ring(f.vars(), l.vars())) throw DomainError("divide_by_linear: different rings");
  const Degree dl = l.total_degree();
  if (!dl || *dl != 1) throw DomainError("divide_by_linear: divisor must have total degree 1");
  // Division by the single polynomial l under grevlex: l | f iff the remainder vanishes.
  const Term& lead = l.leading_term();
  std::vector<Term> quotient;
  Polynomial rest = f;
  while (!rest.is_zero()) {
    const Term& t = rest.leading_term();
    if (!lead.monomial.divides(t.monomial)) return std::nullopt;
    const Monomial q = t.monomial / lead.monomial;
    const Rational c = t.coeff / lead.coeff;
    quotient.push_back({q, c});
    rest -= l.times_term(q, c);
  }
  return Polynomial::from_terms(f.vars(), std::move(quotient));
}

std::vector<std::pair<int, Polynomial>> homogeneous_components(const Polynomial& f) {
  std::vector<std::pair<int, Polynomial>> out;
  std::vector<Term> current;
  int current_degree = -1;
  auto flush = [&] {
    if (!current.empty()) out.emplace_back(current_degree, Polynomial::from_terms(f.vars(), std::move(current)));
    current.clear();
  };
  for (const auto& t : f.terms()) {
    if (t.monomial.degree() != current_degree) {
      flush();
      current_degree = t.monomial.degree();
    }
    current.push_back(t);
  }
  flush();
  std::reverse(out.begin(), out.end());
  return out;
}

Polynomial embed(const Polynomial& f, const VarList& target, std::span<const std::size_t> index_map) {
  if (index_map.size() != f.num_vars()) throw DomainError("embed: index map length mismatch");
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m(target->size());
    for (std::size_t i = 0; i < f.num_vars(); ++i) {
      if (t.monomial[i] == 0) continue;
      if (index_map[i] >= target->size()) throw DomainError("embed: target index out of range");
      m.set(index_map[i], m[index_map[i]] + t.monomial[i]);
    }
    terms.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(target, std::move(terms));
}

RationalVector linear_coefficients(const Polynomial& l, bool with_constant) {
  const std::size_t n = l.num_vars();
  RationalVector v(n + (with_constant ? 1 : 0));
  for (const auto& t : l.terms()) {
    if (t.monomial.degree() > 1) throw DomainError("linear_coefficients: polynomial has degree > 1");
    if (t.monomial.degree() == 0) {
      if (!with_constant) throw DomainError("linear form has a constant term");
      v[n] = t.coeff;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (t.monomial[i] == 1) v[i] = t.coeff;
  }
  return v;
}

Polynomial linear_form(const VarList& vars, std::span<const Rational> coeffs, const Rational& constant) {
  if (coeffs.size() != vars->size()) throw DomainError("linear_form: coefficient count mismatch");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (pfdkit::is_zero(coeffs[i])) continue;
    Monomial m(vars->size());
    m.set(i, 1);
    terms.push_back({m, coeffs[i]});
  }
  if (!pfdkit::is_zero(constant)) terms.push_back({Monomial(vars->size()), constant});
  return Polynomial::from_terms(vars, std::move(terms));
}

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms()) {
    Rational c = t.coeff;
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < f.num_vars(); ++i) {
      const int e = t.monomial[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += (*f.vars())[i];
      if (e > 1) mono += '^' + std::to_string(e);
    }
    if (mono.empty()) {
      os << c.get_str();
    } else if (c == 1) {
      os << mono;
    } else {
      os << c.get_str() << '*' << mono;
    }
  }
  return os.str();
}

}  // namespace pfdkit
