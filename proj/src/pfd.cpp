#include "pfdkit/pfd.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "pfdkit/error.hpp"
#include "pfdkit/parallel.hpp"

namespace pfdkit {

namespace {

void validate_forms(const VarList& vars, const std::vector<Polynomial>& forms, Mode mode) {
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto& l = forms[i];
    const std::string where = "denominator form " + std::to_string(i + 1);
    if (!same_ring(l.vars(), vars)) throw DomainError(where + " lives in a different ring");
    if (l.total_degree() != 1) throw DomainError(where + " is not of degree 1");
    if (mode == Mode::kProjective && !l.is_homogeneous())
      throw DomainError(where + " has a constant term in projective mode");
  }
}

// The problem with all polynomials made homogeneous; a fresh last variable is
// added when anything was inhomogeneous.
struct Homogenized {
  VarList vars;
  std::vector<Polynomial> forms;
  Polynomial numerator;
  bool extended = false;
};

Homogenized homogenize_problem(const RationalFunction& rf) {
  Homogenized h;
  bool homogeneous = rf.numerator().is_homogeneous();
  for (const auto& l : rf.forms()) homogeneous = homogeneous && l.is_homogeneous();
  if (homogeneous) {
    h.vars = rf.vars();
    h.forms = rf.forms();
    h.numerator = rf.numerator();
    return h;
  }
  std::vector<std::string> names = *rf.vars();
  names.push_back(fresh_variable(rf.vars(), "_h"));
  h.vars = make_vars(std::move(names));
  for (const auto& l : rf.forms()) h.forms.push_back(homogenize_into(l, h.vars, 1));
  h.numerator = homogenize_into(rf.numerator(), h.vars, *rf.numerator().total_degree());
  h.extended = true;
  return h;
}

// Sets the homogenizing variable to 1.
Polynomial drop_last_variable(const Polynomial& f, const VarList& target) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m(target->size());
    for (std::size_t i = 0; i < target->size(); ++i) m.set(i, t.monomial[i]);
    terms.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(target, std::move(terms));
}

std::vector<std::size_t> complement(IndexMask mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!(mask >> i & 1)) out.push_back(i);
  return out;
}

PfdMethod route_for(MethodChoice choice, int total_degree, int d) {
  switch (choice) {
    case MethodChoice::kGroebner:
      return PfdMethod::kGroebner;
    case MethodChoice::kLinear:
      return PfdMethod::kLinear;
    case MethodChoice::kAuto:
      break;
  }
  return total_degree == d ? PfdMethod::kLinear : PfdMethod::kGroebner;
}

// Coefficients over the d-fold generators selected by `masks` (all when
// nullopt), or nullopt when f is not in the ideal they generate.
std::optional<PfdResult> extract(const RationalFunction& rf, const Homogenized& h, int d,
                                 const std::optional<std::vector<IndexMask>>& masks, PfdMethod route,
                                 const PfdOptions& options) {
  const std::size_t n = rf.size();
  const Arrangement arr(h.vars, h.forms, Mode::kProjective);
  GeneratorSpec spec{d, masks, options.max_generators};
  const auto gens = dfold_generators(arr, spec);
  if (gens.empty()) return std::nullopt;
  std::vector<Polynomial> products;
  products.reserve(gens.size());
  for (const auto& g : gens) products.push_back(g.product);

  const int total = *h.numerator.total_degree();
  std::optional<std::vector<Polynomial>> coeffs;
  if (route == PfdMethod::kGroebner) {
    const IdealWithBasis ideal(products, {}, options.max_pairs);
    coeffs = express_in_generators(h.numerator, ideal);
    if (coeffs) {
      for (const auto& c : *coeffs)
        if (!c.is_zero() && *c.total_degree() > total - d) {
          // Not expected for homogeneous input; the bounded solve enforces the bound.
          coeffs = express_bounded_degree(h.numerator, products, total - d, SolveMode::kMinNorm);
          route = PfdMethod::kLinear;
          break;
        }
    }
  } else {
    coeffs = express_bounded_degree(h.numerator, products, total - d, SolveMode::kMinNorm);
  }
  if (!coeffs) return std::nullopt;

  PfdResult result;
  result.degree = d;
  result.method = route;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const Polynomial& c = (*coeffs)[k];
    if (c.is_zero()) continue;
    result.terms.push_back({h.extended ? drop_last_variable(c, rf.vars()) : c, complement(gens[k].indices, n)});
  }
  result.terms = merge_terms(std::move(result.terms));
  return result;
}

std::optional<std::vector<IndexMask>> restriction_masks(const PfdOptions& options, std::size_t n, int d) {
  if (!options.restriction) return std::nullopt;
  return options.restriction->masks(n, d, options.max_generators);
}

std::optional<PfdResult> pfd_direct(const RationalFunction& rf, const PfdOptions& options) {
  const std::size_t n = rf.size();
  if (n == 0) return std::nullopt;
  const Homogenized h = homogenize_problem(rf);
  const int total = *rf.numerator().total_degree();
  const bool restricted = options.restriction.has_value();

  if (options.degree) {
    const int d = *options.degree;
    if (d < 1 || static_cast<std::size_t>(d) > n)
      throw DomainError("degree " + std::to_string(d) + " outside [1, " + std::to_string(n) + "]");
    if (d > total) return std::nullopt;
    auto r = extract(rf, h, d, restriction_masks(options, n, d), route_for(options.method, total, d), options);
    if (r) r->status = restricted ? PfdStatus::kLowerBound : PfdStatus::kFixedDegree;
    return r;
  }

  std::size_t upper = n;
  if (options.max_degree) upper = std::min<std::size_t>(upper, static_cast<std::size_t>(std::max(0, *options.max_degree)));
  upper = std::min<std::size_t>(upper, static_cast<std::size_t>(total));

  std::optional<PfdResult> best;
  int best_d = 0;
  if (restricted) {
    for (std::size_t d = 1; d <= upper; ++d) {
      const int di = static_cast<int>(d);
      auto r = extract(rf, h, di, restriction_masks(options, n, di), route_for(options.method, total, di), options);
      if (!r) break;
      best = std::move(r);
      best_d = di;
    }
    if (best) best->status = PfdStatus::kLowerBound;
    return best;
  }

  const Arrangement arr = rf.arrangement();
  for (std::size_t d = 1; d <= upper; ++d) {
    if (!exists_pfd_via_flats(rf.numerator(), arr, static_cast<int>(d)).holds) break;
    best_d = static_cast<int>(d);
  }
  if (best_d == 0) return std::nullopt;

  if (options.method == MethodChoice::kAuto && best_d == total && generic_applicable(rf)) {
    best = pfd_generic(rf);
  } else {
    best = extract(rf, h, best_d, std::nullopt, route_for(options.method, total, best_d), options);
    if (!best) throw DomainError("coefficient extraction failed at degree " + std::to_string(best_d));
  }
  const bool capped = static_cast<std::size_t>(best_d) == upper && upper < n && upper < static_cast<std::size_t>(total);
  best->status = capped ? PfdStatus::kCapped : PfdStatus::kMaximal;
  return best;
}

std::optional<PfdResult> pfd_iterative(const RationalFunction& rf, const PfdOptions& options) {
  PfdOptions step = options;
  step.iterative_step = 0;
  step.degree.reset();
  step.max_degree = options.iterative_step;
  auto first = pfd_direct(rf, step);
  if (!first) return std::nullopt;
  std::vector<PfdTerm> terms = first->terms;
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<PfdTerm> next;
    for (auto& t : terms) {
      if (t.denominator.empty()) {
        next.push_back(std::move(t));
        continue;
      }
      std::vector<Polynomial> forms;
      for (auto i : t.denominator) forms.push_back(rf.form(i));
      const ReducedExpression red = reduced_exp(RationalFunction(t.numerator, forms, rf.mode()));
      std::vector<std::size_t> kept;
      for (auto k : red.kept) kept.push_back(t.denominator[k]);
      PfdOptions sub = step;
      if (options.restriction) sub.restriction = options.restriction->restricted_to(kept);
      std::optional<PfdResult> r;
      if (!kept.empty()) r = pfd_direct(red.function, sub);
      if (r) {
        for (auto& s : remap(std::move(*r), kept, rf.size()).terms) next.push_back(std::move(s));
        changed = true;
      } else if (!red.removed.empty()) {
        next.push_back({red.function.numerator(), kept});
        changed = true;
      } else {
        next.push_back(std::move(t));
      }
    }
    terms = merge_terms(std::move(next));
  }
  PfdResult result;
  std::size_t widest = 0;
  for (const auto& t : terms) widest = std::max(widest, t.denominator.size());
  result.degree = static_cast<int>(rf.size() - widest);
  result.terms = std::move(terms);
  result.method = first->method;
  result.status = PfdStatus::kIterative;
  return result;
}

std::vector<std::size_t> parse_index_list(const std::string& text, std::size_t n, const std::string& what) {
  std::istringstream in(text);
  std::vector<std::size_t> out;
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(tok, &pos);
    } catch (const std::exception&) {
      throw InputError(what + ": '" + tok + "' is not an index");
    }
    if (pos != tok.size()) throw InputError(what + ": '" + tok + "' is not an index");
    if (v < 1 || static_cast<std::size_t>(v) > n)
      throw InputError(what + ": index " + tok + " outside [1, " + std::to_string(n) + "]");
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw InputError(what + ": repeated index");
  return out;
}

}  // namespace

RationalFunction::RationalFunction(Polynomial numerator, std::vector<Polynomial> forms, Mode mode)
    : numerator_(std::move(numerator)), forms_(std::move(forms)), mode_(mode) {
  if (numerator_.is_zero()) throw DomainError("numerator is zero");
  if (forms_.size() > kMaxForms) throw DomainError("more than 64 denominator forms");
  validate_forms(numerator_.vars(), forms_, mode_);
}

RationalFunction RationalFunction::from_problem(const ProblemFile& p) {
  return RationalFunction(p.numerator, p.denominators, p.mode);
}

Arrangement RationalFunction::arrangement() const { return Arrangement(vars(), forms_, mode_); }

ReducedExpression reduced_exp(const RationalFunction& rf) {
  Polynomial f = rf.numerator();
  std::vector<Polynomial> forms;
  ReducedExpression out{rf, {}, {}};
  for (std::size_t i = 0; i < rf.size(); ++i) {
    if (auto q = divide_by_linear(f, rf.form(i))) {
      f = std::move(*q);
      out.removed.push_back(i);
    } else {
      forms.push_back(rf.form(i));
      out.kept.push_back(i);
    }
  }
  out.function = RationalFunction(std::move(f), std::move(forms), rf.mode());
  return out;
}

bool is_fully_reduced(const RationalFunction& rf) {
  return std::none_of(rf.forms().begin(), rf.forms().end(),
                      [&](const Polynomial& l) { return divide_by_linear(rf.numerator(), l).has_value(); });
}

std::string to_string(PfdMethod m) {
  switch (m) {
    case PfdMethod::kGroebner:
      return "gb";
    case PfdMethod::kLinear:
      return "linear";
    case PfdMethod::kGeneric:
      return "generic";
    case PfdMethod::kExternal:
      return "external";
  }
  return "?";
}

std::string to_string(PfdStatus s) {
  switch (s) {
    case PfdStatus::kMaximal:
      return "maximal";
    case PfdStatus::kFixedDegree:
      return "fixed-degree";
    case PfdStatus::kCapped:
      return "capped";
    case PfdStatus::kLowerBound:
      return "lower-bound";
    case PfdStatus::kIterative:
      return "iterative";
    case PfdStatus::kExternal:
      return "external";
  }
  return "?";
}

PfdMethod parse_method(const std::string& s) {
  for (auto m : {PfdMethod::kGroebner, PfdMethod::kLinear, PfdMethod::kGeneric, PfdMethod::kExternal})
    if (to_string(m) == s) return m;
  throw InputError("unknown method '" + s + "'");
}

PfdStatus parse_status(const std::string& s) {
  for (auto v : {PfdStatus::kMaximal, PfdStatus::kFixedDegree, PfdStatus::kCapped, PfdStatus::kLowerBound,
                 PfdStatus::kIterative, PfdStatus::kExternal})
    if (to_string(v) == s) return v;
  throw InputError("unknown status '" + s + "'");
}

MethodChoice parse_method_choice(const std::string& s) {
  if (s == "auto") return MethodChoice::kAuto;
  if (s == "gb") return MethodChoice::kGroebner;
  if (s == "linear") return MethodChoice::kLinear;
  throw InputError("unknown method '" + s + "' (expected gb, linear or auto)");
}

std::vector<IndexMask> GeneratorRestriction::masks(std::size_t n, int d, std::size_t cap) const {
  IndexMask excluded = to_mask(exclude);
  std::vector<IndexMask> out;
  auto push = [&](IndexMask m) {
    if (m & excluded) return;
    out.push_back(m);
    if (out.size() > cap)
      throw ResourceLimitError("restricted generator set exceeds " + std::to_string(cap) + " generators");
  };
  if (allow.empty() && subsets.empty()) {
    for_each_subset(n, d, push);
  } else {
    for (const auto& a : allow)
      if (static_cast<int>(a.size()) == d) push(to_mask(a));
    for (const auto& s : subsets) {
      const auto& idx = s;
      for_each_subset(idx.size(), d, [&](IndexMask local) {
        IndexMask m = 0;
        for (auto k : to_indices(local)) m |= IndexMask{1} << idx[k];
        push(m);
      });
    }
  }
  std::sort(out.begin(), out.end(), [](IndexMask a, IndexMask b) { return to_indices(a) < to_indices(b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GeneratorRestriction GeneratorRestriction::restricted_to(const std::vector<std::size_t>& kept) const {
  std::map<std::size_t, std::size_t> index;
  for (std::size_t k = 0; k < kept.size(); ++k) index[kept[k]] = k;
  auto map_all = [&](const std::vector<std::size_t>& v, bool require_all) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> out;
    for (auto i : v) {
      auto it = index.find(i);
      if (it != index.end())
        out.push_back(it->second);
      else if (require_all)
        return std::nullopt;
    }
    return out;
  };
  GeneratorRestriction r;
  for (const auto& a : allow)
    if (auto m = map_all(a, true)) r.allow.push_back(*m);
  for (const auto& s : subsets) r.subsets.push_back(*map_all(s, false));
  r.exclude = *map_all(exclude, false);
  if (r.allow.empty() && r.subsets.empty() && !(allow.empty() && subsets.empty())) r.subsets.push_back({});
  return r;
}

GeneratorRestriction parse_restriction(const std::string& text, std::size_t n) {
  GeneratorRestriction r;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto colon = line.find(':');
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (colon == std::string::npos) throw ParseError("expected 'allow:', 'subset:' or 'exclude:'", lineno, static_cast<int>(first) + 1);
    std::string key = line.substr(first, colon - first);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    const std::string rest = line.substr(colon + 1);
    const std::string where = "restriction line " + std::to_string(lineno);
    if (key == "allow")
      r.allow.push_back(parse_index_list(rest, n, where));
    else if (key == "subset")
      r.subsets.push_back(parse_index_list(rest, n, where));
    else if (key == "exclude") {
      for (auto i : parse_index_list(rest, n, where)) r.exclude.push_back(i);
    } else
      throw ParseError("unknown key '" + key + "'", lineno, static_cast<int>(first) + 1);
  }
  std::sort(r.exclude.begin(), r.exclude.end());
  r.exclude.erase(std::unique(r.exclude.begin(), r.exclude.end()), r.exclude.end());
  return r;
}

std::optional<PfdResult> pfd(const RationalFunction& rf, const PfdOptions& options) {
  if (!is_fully_reduced(rf)) throw DomainError("pfd: input is not fully reduced (run reduction first)");
  if (options.iterative_step > 0 && !options.degree) return pfd_iterative(rf, options);
  return pfd_direct(rf, options);
}

CheckMethod parse_check_method(const std::string& s) {
  if (s == "flats") return CheckMethod::kFlats;
  if (s == "gb") return CheckMethod::kGroebner;
  if (s == "linear") return CheckMethod::kLinear;
  throw InputError("unknown method '" + s + "' (expected flats, gb or linear)");
}

bool pfd_exists(const RationalFunction& rf, int d, CheckMethod method, std::size_t max_pairs) {
  const std::size_t n = rf.size();
  if (d < 1 || static_cast<std::size_t>(d) > n)
    throw DomainError("degree " + std::to_string(d) + " outside [1, " + std::to_string(n) + "]");
  if (method == CheckMethod::kFlats) return exists_pfd_via_flats(rf.numerator(), rf.arrangement(), d).holds;
  const int total = *rf.numerator().total_degree();
  if (d > total) return false;
  const Homogenized h = homogenize_problem(rf);
  std::vector<Polynomial> gens;
  for (auto& g : dfold_generators(Arrangement(h.vars, h.forms, Mode::kProjective), GeneratorSpec{d, std::nullopt}))
    gens.push_back(std::move(g.product));
  if (method == CheckMethod::kGroebner) return member(h.numerator, IdealWithBasis(gens, {}, max_pairs));
  return express_bounded_degree(h.numerator, gens, total - d).has_value();
}

bool generic_applicable(const RationalFunction& rf) {
  if (rf.mode() != Mode::kProjective || !rf.numerator().is_homogeneous() || rf.size() == 0) return false;
  const Arrangement a = rf.arrangement();
  const std::size_t rank = a.rank();
  const std::size_t n = rf.size();
  const int d = static_cast<int>(n - rank) + 1;
  if (*rf.numerator().total_degree() != d) return false;
  // Binomial(n, rank) independence checks; skip very large arrangements.
  double count = 1;
  for (std::size_t k = 0; k < rank; ++k) count = count * static_cast<double>(n - k) / static_cast<double>(k + 1);
  if (count > 20000) return false;
  bool generic = true;
  for_each_subset(n, static_cast<int>(rank), [&](IndexMask s) {
    if (generic && a.rank_of_subset(s) != rank) generic = false;
  });
  return generic;
}

PfdResult pfd_generic(const RationalFunction& rf) {
  if (!generic_applicable(rf))
    throw DomainError("generic PFD needs a homogeneous numerator of degree n - rank + 1 over a generic arrangement");
  const std::size_t n = rf.size();
  const int d = *rf.numerator().total_degree();
  const Arrangement a = rf.arrangement();
  std::vector<Generator> gens = dfold_generators(a, GeneratorSpec{d, std::nullopt});
  std::vector<Polynomial> products;
  for (const auto& g : gens) products.push_back(g.product);
  const auto coeffs = express_bounded_degree(rf.numerator(), products, 0);
  if (!coeffs) throw DomainError("numerator is not in the span of the d-fold products");
  PfdResult result;
  result.degree = d;
  result.method = PfdMethod::kGeneric;
  result.status = PfdStatus::kMaximal;
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (!(*coeffs)[k].is_zero()) result.terms.push_back({(*coeffs)[k], complement(gens[k].indices, n)});
  result.terms = merge_terms(std::move(result.terms));
  return result;
}

PfdResult remap(PfdResult result, const std::vector<std::size_t>& kept, std::size_t original_size) {
  if (kept.size() > original_size) throw DomainError("remap: more kept forms than original forms");
  result.degree += static_cast<int>(original_size - kept.size());
  for (auto& t : result.terms) {
    for (auto& i : t.denominator) i = kept.at(i);
    std::sort(t.denominator.begin(), t.denominator.end());
  }
  result.terms = merge_terms(std::move(result.terms));
  return result;
}

std::vector<PfdTerm> merge_terms(std::vector<PfdTerm> terms) {
  std::map<std::vector<std::size_t>, Polynomial> sums;
  for (auto& t : terms) {
    auto it = sums.find(t.denominator);
    if (it == sums.end())
      sums.emplace(t.denominator, std::move(t.numerator));
    else
      it->second += t.numerator;
  }
  std::vector<PfdTerm> out;
  for (auto& [den, num] : sums)
    if (!num.is_zero()) out.push_back({std::move(num), den});
  return out;
}

PfdCheck check_pfd(const PfdResult& result, const RationalFunction& rf) {
  const std::size_t n = rf.size();
  const int total = *rf.numerator().total_degree();
  auto fail = [](std::string why) { return PfdCheck{false, std::move(why)}; };
  if (result.degree < 0 || static_cast<std::size_t>(result.degree) > n)
    return fail("degree " + std::to_string(result.degree) + " outside [0, " + std::to_string(n) + "]");
  for (std::size_t k = 0; k < result.terms.size(); ++k) {
    const auto& t = result.terms[k];
    const std::string where = "term " + std::to_string(k + 1);
    if (!same_ring(t.numerator.vars(), rf.vars())) return fail(where + ": numerator in a different ring");
    if (t.numerator.is_zero()) return fail(where + ": zero numerator");
    for (std::size_t j = 0; j < t.denominator.size(); ++j) {
      if (t.denominator[j] >= n) return fail(where + ": denominator index outside the input forms");
      if (j && t.denominator[j - 1] >= t.denominator[j]) return fail(where + ": denominator indices not increasing");
    }
    const std::size_t width = t.denominator.size();
    if (width + static_cast<std::size_t>(result.degree) > n)
      return fail(where + ": " + std::to_string(width) + " denominator forms exceed n - d");
    const int bound = total - static_cast<int>(n) + static_cast<int>(width);
    if (*t.numerator.total_degree() > bound)
      return fail(where + ": numerator degree " + std::to_string(*t.numerator.total_degree()) + " exceeds " +
                  std::to_string(bound));
  }
  std::vector<Polynomial> parts(result.terms.size());
  parallel_for(result.terms.size(), [&](std::size_t k) {
    const auto& t = result.terms[k];
    Polynomial p = t.numerator;
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (j < t.denominator.size() && t.denominator[j] == i) {
        ++j;
        continue;
      }
      p *= rf.form(i);
    }
    parts[k] = std::move(p);
  });
  Polynomial sum(rf.vars());
  for (const auto& p : parts) sum += p;
  if (sum != rf.numerator()) return fail("terms do not recombine to the input numerator");
  return {};
}

bool verify_pfd(const PfdResult& result, const RationalFunction& rf) { return check_pfd(result, rf).valid; }

bool reducible_term_criterion(const RationalFunction& rf, int d) {
  const std::size_t n = rf.size();
  if (d < 1 || static_cast<std::size_t>(d) + 1 != n)
    throw DomainError("reducibility criterion needs d = n - 1 >= 1");
  const Arrangement a = rf.arrangement();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a.rank_of_subset(std::vector<std::size_t>{i, j}) < 2)
        throw DomainError("forms " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are not coprime");
  if (!exists_pfd_via_flats(rf.numerator(), a, d).holds)
    throw DomainError("no PFD of degree " + std::to_string(d) + " exists");
  return std::any_of(rf.forms().begin(), rf.forms().end(),
                     [&](const Polynomial& l) { return divide_by_linear(rf.numerator(), l).has_value(); });
}

}  // namespace pfdkit
