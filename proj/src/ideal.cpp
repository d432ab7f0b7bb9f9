#include "pfdkit/ideal.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "pfdkit/error.hpp"

namespace pfdkit {

namespace {

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double v = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    v = v * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (v > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(v + 0.5L);
}

void subsets_rec(std::size_t n, int d, std::size_t start, IndexMask cur, const std::function<void(IndexMask)>& fn) {
  if (d == 0) {
    fn(cur);
    return;
  }
  for (std::size_t i = start; i + static_cast<std::size_t>(d) <= n; ++i)
    subsets_rec(n, d - 1, i + 1, cur | (IndexMask{1} << i), fn);
}

void products_rec(const Arrangement& a, int d, std::size_t start, IndexMask cur, const Polynomial& prefix,
                  std::vector<Generator>& out) {
  if (d == 0) {
    if (!prefix.is_zero()) out.push_back({cur, prefix});
    return;
  }
  for (std::size_t i = start; i + static_cast<std::size_t>(d) <= a.size(); ++i)
    products_rec(a, d - 1, i + 1, cur | (IndexMask{1} << i), prefix * a.form(i), out);
}

// Monomials of total degree exactly e in n variables.
std::vector<Monomial> monomials_of_degree(std::size_t n, int e) {
  std::vector<Monomial> out;
  Monomial m(n);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      m.set(i, left);
      out.push_back(m);
      return;
    }
    for (int k = left; k >= 0; --k) {
      m.set(i, k);
      rec(i + 1, left - k);
    }
    m.set(i, 0);
  };
  if (n == 0) {
    if (e == 0) out.push_back(m);
    return out;
  }
  rec(0, e);
  return out;
}

struct LinearData {
  RationalMatrix linear;  // rows: linear parts
  RationalVector constants;
};

LinearData linear_data(const std::vector<Polynomial>& forms, std::size_t nvars) {
  LinearData d{RationalMatrix(forms.size(), nvars), RationalVector(forms.size())};
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto c = linear_coefficients(forms[i], true);
    for (std::size_t j = 0; j < nvars; ++j) d.linear(i, j) = c[j];
    d.constants[i] = c[nvars];
  }
  return d;
}

}  // namespace

void for_each_subset(std::size_t n, int d, const std::function<void(IndexMask)>& fn) {
  if (d < 0 || static_cast<std::size_t>(d) > n) return;
  subsets_rec(n, d, 0, 0, fn);
}

std::vector<Generator> dfold_generators(const Arrangement& a, const GeneratorSpec& spec) {
  const std::size_t n = a.size();
  if (spec.d < 1 || static_cast<std::size_t>(spec.d) > n)
    throw DomainError("degree d = " + std::to_string(spec.d) + " must lie between 1 and n = " + std::to_string(n));
  std::vector<Generator> out;
  if (spec.allowed) {
    std::vector<IndexMask> allowed = *spec.allowed;
    for (IndexMask m : allowed) {
      if ((m & ~a.ground_set()) != 0) throw DomainError("restricted generator uses an index out of range");
      if (popcount(m) != spec.d) throw DomainError("restricted generator does not have d indices");
    }
    std::sort(allowed.begin(), allowed.end(),
              [](IndexMask x, IndexMask y) { return to_indices(x) < to_indices(y); });
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    if (allowed.size() > spec.max_generators)
      throw ResourceLimitError("too many restricted generators (" + std::to_string(allowed.size()) + ")");
    for (IndexMask m : allowed) {
      Polynomial p = Polynomial::constant(a.vars(), 1);
      for (auto i : to_indices(m)) p *= a.form(i);
      if (!p.is_zero()) out.push_back({m, std::move(p)});
    }
    return out;
  }
  const std::size_t count = binomial_capped(n, static_cast<std::size_t>(spec.d), spec.max_generators);
  if (count > spec.max_generators)
    throw ResourceLimitError("I_{L," + std::to_string(spec.d) + "} has more than " +
                             std::to_string(spec.max_generators) +
                             " generators; use a restricted generator subset");
  products_rec(a, spec.d, 0, 0, Polynomial::constant(a.vars(), 1), out);
  return out;
}

IdealWithBasis::IdealWithBasis(std::vector<Polynomial> generators, MonomialOrder order, std::size_t max_pairs)
    : generators_(std::move(generators)), order_(std::move(order)), max_pairs_(max_pairs) {
  vars_ = generators_.empty() ? Polynomial().vars() : generators_.front().vars();
  for (const auto& g : generators_) {
    if (!same_ring(g.vars(), vars_)) throw DomainError("ideal generators from different rings");
    if (!g.is_homogeneous()) homogeneous_ = false;
  }
}

IdealWithBasis::IdealWithBasis(IdealWithBasis&& other) noexcept
    : generators_(std::move(other.generators_)),
      order_(std::move(other.order_)),
      max_pairs_(other.max_pairs_),
      vars_(std::move(other.vars_)),
      homogeneous_(other.homogeneous_) {
  std::lock_guard<std::mutex> lock(other.mutex_);
  cache_ = std::move(other.cache_);
}

IdealWithBasis& IdealWithBasis::operator=(IdealWithBasis&& other) noexcept {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  generators_ = std::move(other.generators_);
  order_ = std::move(other.order_);
  max_pairs_ = other.max_pairs_;
  vars_ = std::move(other.vars_);
  homogeneous_ = other.homogeneous_;
  cache_ = std::move(other.cache_);
  return *this;
}

const GroebnerBasis& IdealWithBasis::basis_for(std::optional<int> limit) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (auto it = cache_.find(-1); it != cache_.end()) return *it->second;
  const int key = limit ? *limit : -1;
  if (limit) {
    // Any cached truncation at a higher degree serves as well.
    auto it = cache_.lower_bound(*limit);
    if (it != cache_.end()) return *it->second;
  }
  GroebnerOptions opt;
  opt.degree_limit = limit;
  opt.max_pairs = max_pairs_;
  auto gb = std::make_unique<GroebnerBasis>(GroebnerBasis::compute(generators_, order_, opt));
  return *(cache_[key] = std::move(gb));
}

const GroebnerBasis& IdealWithBasis::basis_for(const Polynomial& f) const {
  if (homogeneous_ && order_.is_graded() && f.is_homogeneous() && !f.is_zero())
    return basis_for(std::optional<int>(*f.total_degree()));
  return basis_for(std::nullopt);
}

GroebnerBasis::Division normal_form(const Polynomial& f, const IdealWithBasis& ideal) {
  return ideal.basis_for(f).divide(f);
}

bool member(const Polynomial& f, const IdealWithBasis& ideal) {
  if (f.is_zero()) return true;
  return normal_form(f, ideal).remainder.is_zero();
}

std::optional<std::vector<Polynomial>> express_in_generators(const Polynomial& f, const IdealWithBasis& ideal) {
  if (f.is_zero()) return std::vector<Polynomial>(ideal.generators().size(), Polynomial(f.vars()));
  const GroebnerBasis& gb = ideal.basis_for(f);
  auto div = gb.divide(f);
  if (!div.remainder.is_zero()) return std::nullopt;
  return gb.lift(div.quotients);
}

std::optional<std::vector<Polynomial>> express_bounded_degree(const Polynomial& f,
                                                             const std::vector<Polynomial>& generators, int bound,
                                                             SolveMode mode) {
  const VarList& vars = f.vars();
  const std::size_t nvars = vars->size();
  bool homogeneous = f.is_homogeneous();
  for (const auto& g : generators) {
    if (!same_ring(g.vars(), vars)) throw DomainError("express_bounded_degree: generators from a different ring");
    if (!g.is_homogeneous()) homogeneous = false;
  }
  std::vector<Polynomial> zero(generators.size(), Polynomial(vars));
  if (f.is_zero()) return zero;

  struct Unknown {
    std::size_t gen;
    Monomial mu;
  };
  std::vector<Unknown> unknowns;
  std::vector<std::vector<Monomial>> by_degree;
  auto monomials = [&](int e) -> const std::vector<Monomial>& {
    while (static_cast<int>(by_degree.size()) <= e) by_degree.push_back(monomials_of_degree(nvars, static_cast<int>(by_degree.size())));
    return by_degree[static_cast<std::size_t>(e)];
  };
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const auto& g = generators[k];
    if (g.is_zero()) continue;
    if (homogeneous) {
      const int e = *f.total_degree() - *g.total_degree();
      if (e < 0 || e > bound) continue;
      for (const auto& mu : monomials(e)) unknowns.push_back({k, mu});
    } else {
      for (int e = 0; e <= bound; ++e)
        for (const auto& mu : monomials(e)) unknowns.push_back({k, mu});
    }
  }
  if (unknowns.empty()) return std::nullopt;

  std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
  std::vector<Monomial> rows;
  auto row = [&](const Monomial& m) {
    auto [it, inserted] = row_of.emplace(m, rows.size());
    if (inserted) rows.push_back(m);
    return it->second;
  };
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    for (const auto& t : generators[unknowns[u].gen].terms()) columns[u].emplace_back(row(t.monomial * unknowns[u].mu), t.coeff);
  for (const auto& t : f.terms())
    if (!row_of.count(t.monomial)) return std::nullopt;

  RationalMatrix a(rows.size(), unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    for (const auto& [r, c] : columns[u]) a(r, u) = c;
  RationalVector b(rows.size());
  for (const auto& t : f.terms()) b[row_of.at(t.monomial)] = t.coeff;

  const auto x = mode == SolveMode::kMinNorm ? solve_min_norm(a, b) : solve(a, b);
  if (!x) return std::nullopt;
  std::vector<std::vector<Term>> terms(generators.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    if (!is_zero((*x)[u])) terms[unknowns[u].gen].push_back({unknowns[u].mu, (*x)[u]});
  std::vector<Polynomial> out;
  for (auto& t : terms) out.push_back(Polynomial::from_terms(vars, std::move(t)));
  return out;
}

std::optional<std::vector<Polynomial>> express_bounded_degree(const Polynomial& f, const Arrangement& a,
                                                             const GeneratorSpec& spec, int bound, SolveMode mode) {
  std::vector<Polynomial> gens;
  for (auto& g : dfold_generators(a, spec)) gens.push_back(std::move(g.product));
  return express_bounded_degree(f, gens, bound, mode);
}

IdealWithBasis intersect(const IdealWithBasis& i, const IdealWithBasis& j) {
  if (i.generators().empty() || j.generators().empty())
    return IdealWithBasis({}, i.order());
  if (!same_ring(i.vars(), j.vars())) throw DomainError("intersect: ideals in different rings");
  const VarList& vars = i.vars();
  const std::size_t n = vars->size();
  const std::string t = fresh_variable(vars, "_t");
  std::vector<std::string> names = *vars;
  names.push_back(t);
  const VarList ext = make_vars(std::move(names));
  std::vector<std::size_t> index_map(n);
  std::iota(index_map.begin(), index_map.end(), 0);
  const Polynomial tv = Polynomial::variable(ext, n);
  const Polynomial one_minus_t = Polynomial::constant(ext, 1) - tv;
  std::vector<Polynomial> gens;
  for (const auto& g : i.generators()) gens.push_back(tv * embed(g, ext, index_map));
  for (const auto& g : j.generators()) gens.push_back(one_minus_t * embed(g, ext, index_map));
  std::vector<std::size_t> precedence{n};
  for (std::size_t k = 0; k < n; ++k) precedence.push_back(k);
  const auto gb = GroebnerBasis::compute(gens, MonomialOrder::block_elimination(1, precedence));
  std::vector<Polynomial> out;
  for (std::size_t k = 0; k < gb.elements().size(); ++k)
    if (gb.leading_monomial(k)[n] == 0) out.push_back(dehomogenize(gb.elements()[k], t));
  // dehomogenize builds an equal ring; keep the caller's pointer.
  for (auto& p : out) p = embed(p, vars, index_map);
  return IdealWithBasis(std::move(out), i.order());
}

bool ideal_equal(const IdealWithBasis& i, const IdealWithBasis& j) {
  for (const auto& g : i.generators())
    if (!member(g, j)) return false;
  for (const auto& g : j.generators())
    if (!member(g, i)) return false;
  return true;
}

std::vector<Polynomial> linear_ideal_power(const std::vector<Polynomial>& forms, int k) {
  if (forms.empty()) throw DomainError("linear_ideal_power: no forms");
  if (k < 0) throw DomainError("linear_ideal_power: negative exponent");
  const VarList& vars = forms.front().vars();
  const std::size_t nvars = vars->size();
  RationalMatrix m(forms.size(), nvars + 1);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto c = linear_coefficients(forms[i], true);
    std::copy(c.begin(), c.end(), m.row(i).begin());
  }
  const auto r = rref(m);
  std::vector<Polynomial> basis;
  for (std::size_t i = 0; i < r.rank; ++i) {
    const auto row = r.reduced.row(i);
    basis.push_back(linear_form(vars, row.first(nvars), row[nvars]));
  }
  std::vector<Polynomial> out;
  std::function<void(std::size_t, int, const Polynomial&)> rec = [&](std::size_t start, int left,
                                                                     const Polynomial& prefix) {
    if (left == 0) {
      out.push_back(prefix);
      return;
    }
    for (std::size_t b = start; b < basis.size(); ++b) rec(b, left - 1, prefix * basis[b]);
  };
  rec(0, k, Polynomial::constant(vars, 1));
  return out;
}

std::optional<int> linear_vanishing_order(const Polynomial& f, const std::vector<Polynomial>& forms) {
  if (f.is_zero()) return std::nullopt;
  const VarList& vars = f.vars();
  const std::size_t n = vars->size();
  for (const auto& l : forms)
    if (!same_ring(l.vars(), vars)) throw DomainError("vanishing order: forms from a different ring");
  if (forms.empty()) return 0;
  const LinearData data = linear_data(forms, n);

  Polynomial g = f;
  if (std::any_of(data.constants.begin(), data.constants.end(), [](const Rational& c) { return !is_zero(c); })) {
    RationalVector rhs(data.constants.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = -data.constants[i];
    const auto p = solve(data.linear, rhs);
    if (!p) throw DomainError("vanishing order: the forms have no common zero");
    g = substitute_linear(g, RationalMatrix::identity(n), *p);
  }

  const auto r = rref(data.linear);
  const std::size_t m = r.rank;
  if (m == 0) return 0;
  RationalMatrix change(n, n);
  std::vector<bool> pivot(n, false);
  for (std::size_t i = 0; i < m; ++i) {
    pivot[r.pivots[i]] = true;
    for (std::size_t j = 0; j < n; ++j) change(i, j) = r.reduced(i, j);
  }
  std::size_t next = m;
  for (std::size_t j = 0; j < n; ++j)
    if (!pivot[j]) change(next++, j) = 1;
  // New coordinates y = change * x; the forms of S span y_1..y_m.
  const Polynomial h = substitute_linear(g, inverse(change), RationalVector(n));
  int order = -1;
  for (const auto& t : h.terms()) {
    int e = 0;
    for (std::size_t i = 0; i < m; ++i) e += t.monomial[i];
    if (order < 0 || e < order) order = e;
  }
  return order;
}

bool power_linear_membership(const Polynomial& f, const Arrangement& a, const FlatSet& s, int k) {
  if (k < 0) throw DomainError("power_linear_membership: negative exponent");
  if (k == 0 || f.is_zero()) return true;
  std::vector<Polynomial> forms;
  for (auto i : s.indices) forms.push_back(a.form(i));
  const auto order = linear_vanishing_order(f, forms);
  return !order || *order >= k;
}

}  // namespace pfdkit
