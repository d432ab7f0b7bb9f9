#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "pfdkit/document.hpp"
#include "pfdkit/error.hpp"
#include "pfdkit/pfd.hpp"
#include "support.hpp"

using namespace pfdkit;
using pfdkit::testing::Rng;

namespace {

RationalFunction load_rf(const std::string& name) {
  return RationalFunction::from_problem(pfdkit::testing::load_fixture(name));
}

RationalFunction make_rf(const VarList& vars, const std::string& f, const std::vector<std::string>& forms,
                         Mode mode = Mode::kProjective) {
  std::vector<Polynomial> ls;
  for (const auto& l : forms) ls.push_back(parse_polynomial(l, vars));
  return RationalFunction(parse_polynomial(f, vars), ls, mode);
}

PfdDocument load_doc(const std::string& name) { return load_pfd_document(pfdkit::testing::fixture_path(name)); }

std::vector<Polynomial> products(const RationalFunction& rf, int d) {
  std::vector<Polynomial> out;
  for (auto& g : dfold_generators(rf.arrangement(), GeneratorSpec{d, std::nullopt})) out.push_back(g.product);
  return out;
}

// Independent recombination: sum of c_J * prod_{i not in J} l_i.
Polynomial recombine(const std::vector<PfdTerm>& terms, const RationalFunction& rf) {
  Polynomial sum(rf.vars());
  for (const auto& t : terms) {
    Polynomial p = t.numerator;
    for (std::size_t i = 0; i < rf.size(); ++i)
      if (std::find(t.denominator.begin(), t.denominator.end(), i) == t.denominator.end()) p = p * rf.form(i);
    sum = sum + p;
  }
  return sum;
}

std::vector<Polynomial> random_forms(Rng& rng, const VarList& vars, std::size_t n, bool affine) {
  std::vector<Polynomial> forms;
  for (std::size_t i = 0; i < n; ++i) forms.push_back(pfdkit::testing::random_linear(rng, vars, affine, 2));
  return forms;
}

Polynomial random_combination(Rng& rng, const std::vector<Polynomial>& gens, int extra, bool homogeneous) {
  Polynomial f(gens.front().vars());
  for (const auto& g : gens)
    if (rng.between(0, 2) == 0) f += pfdkit::testing::random_poly(rng, g.vars(), extra, 2, homogeneous ? extra : 0, homogeneous) * g;
  return f;
}

// A random fully reduced function whose numerator lies in I_{L,d}.
std::optional<RationalFunction> random_member_rf(Rng& rng, std::size_t r, std::size_t n, int d, int extra, Mode mode) {
  const VarList vars = pfdkit::testing::ring(r);
  const auto forms = random_forms(rng, vars, n, mode == Mode::kAffine);
  const Arrangement a(vars, forms, mode);
  std::vector<Polynomial> gens;
  for (auto& g : dfold_generators(a, GeneratorSpec{d, std::nullopt})) gens.push_back(g.product);
  const Polynomial f = random_combination(rng, gens, extra, mode == Mode::kProjective);
  if (f.is_zero()) return std::nullopt;
  RationalFunction rf(f, forms, mode);
  if (!is_fully_reduced(rf)) return std::nullopt;
  return rf;
}

std::map<std::vector<std::size_t>, Polynomial> as_map(const std::vector<PfdTerm>& terms) {
  std::map<std::vector<std::size_t>, Polynomial> m;
  for (const auto& t : terms) m.emplace(t.denominator, t.numerator);
  return m;
}

}  // namespace

TEST_CASE("reduced_exp") {
  const auto red = reduced_exp(load_rf("spurious.problem"));
  const VarList& xy = red.function.vars();
  CHECK(red.removed == std::vector<std::size_t>{0});
  CHECK(red.kept == std::vector<std::size_t>{1, 2, 3});
  CHECK(red.function.numerator() == parse_polynomial("13*y - 6*x", xy));
  REQUIRE(red.function.size() == 3);
  CHECK(red.function.form(0) == parse_polynomial("y - 3*x", xy));
  CHECK(is_fully_reduced(red.function));
  CHECK_FALSE(is_fully_reduced(load_rf("spurious.problem")));

  const auto same = reduced_exp(load_rf("intro.problem"));
  CHECK(same.removed.empty());
  CHECK(same.function.numerator() == load_rf("intro.problem").numerator());

  const auto all = reduced_exp(make_rf(xy, "(x + y)*(x - y)", {"x + y", "x - y"}));
  CHECK(all.function.size() == 0);
  CHECK(all.function.numerator() == Polynomial::constant(xy, 1));
  // Repeated forms are removed one copy at a time.
  const auto twice = reduced_exp(make_rf(xy, "x^2*y", {"x", "y", "x", "x"}));
  CHECK(twice.removed == std::vector<std::size_t>{0, 1, 2});
  CHECK(twice.function.numerator() == Polynomial::constant(xy, 1));
}

TEST_CASE("introductory example") {
  const RationalFunction rf = load_rf("intro.problem");
  const auto res = pfd(rf);
  REQUIRE(res.has_value());
  CHECK(res->degree == 1);
  CHECK(res->status == PfdStatus::kMaximal);
  REQUIRE(res->terms.size() == 3);
  for (const auto& t : res->terms) {
    CHECK(t.numerator.is_constant());
    CHECK(t.denominator.size() == 2);
  }
  CHECK(verify_pfd(*res, rf));
  CHECK(recombine(res->terms, rf) == rf.numerator());

  const PfdDocument printed = load_doc("intro_published.pfd");
  CHECK(check_document(printed, rf).valid);
  CHECK(recombine(printed.result.terms, rf) == rf.numerator());

  PfdOptions at2;
  at2.degree = 2;
  CHECK_FALSE(pfd(rf, at2).has_value());
  at2.degree = 4;
  CHECK_THROWS_AS(pfd(rf, at2), DomainError);
  CHECK_THROWS_AS(pfd(load_rf("spurious.problem")), DomainError);
}

TEST_CASE("x^2 over x y (x + y)") {
  const VarList xy = make_vars({"x", "y"});
  const RationalFunction rf = make_rf(xy, "x^2", {"x", "y", "x + y"});
  // x^2 is divisible by x: reduce first, then the reduced problem x / (y (x + y)).
  CHECK_THROWS_AS(pfd(rf), DomainError);

  const auto g = pfd_generic(make_rf(xy, "x^2", {"x", "y", "x + y"}));
  CHECK(g.degree == 2);
  REQUIRE(g.terms.size() == 2);
  CHECK(g.terms[0] == PfdTerm{Polynomial::constant(xy, 1), {1}});
  CHECK(g.terms[1] == PfdTerm{Polynomial::constant(xy, -1), {2}});

  const auto xyterm = pfd_generic(make_rf(xy, "x*y", {"x", "y", "x + y"}));
  REQUIRE(xyterm.terms.size() == 1);
  CHECK(xyterm.terms[0] == PfdTerm{Polynomial::constant(xy, 1), {2}});

  // The same numerator via the maximal-degree search on a reduced input.
  const RationalFunction reduced = make_rf(xy, "x^2 + y^2", {"x", "y", "x + y"});
  const auto res = pfd(reduced);
  REQUIRE(res.has_value());
  CHECK(res->degree == 2);
  CHECK(res->method == PfdMethod::kGeneric);
  CHECK(verify_pfd(*res, reduced));
}

TEST_CASE("generic decompositions do not depend on the labelling") {
  Rng rng(555);
  int cases = 0;
  while (cases < 40) {
    const VarList vars = pfdkit::testing::ring(3);
    const std::size_t n = static_cast<std::size_t>(rng.between(3, 5));
    auto forms = random_forms(rng, vars, n, false);
    const int d = static_cast<int>(n) - 2;
    const Polynomial f = pfdkit::testing::random_poly(rng, vars, d, 4, d, true);
    if (f.is_zero()) continue;
    RationalFunction rf(f, forms, Mode::kProjective);
    if (!generic_applicable(rf)) continue;
    ++cases;
    const auto a = pfd_generic(rf);
    CHECK(verify_pfd(a, rf));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::vector<Polynomial> permuted;
    for (auto i : perm) permuted.push_back(forms[i]);
    const auto b = pfd_generic(RationalFunction(f, permuted, Mode::kProjective));
    CHECK(remap(b, perm, n).terms == a.terms);
    // All routes agree with the unique decomposition.
    if (is_fully_reduced(rf)) {
      for (auto m : {MethodChoice::kGroebner, MethodChoice::kLinear, MethodChoice::kAuto}) {
        PfdOptions o;
        o.method = m;
        o.degree = d;
        const auto r = pfd(rf, o);
        REQUIRE(r.has_value());
        CHECK(r->terms == a.terms);
      }
    }
  }
  const VarList xy = make_vars({"x", "y"});
  CHECK_THROWS_AS(pfd_generic(make_rf(xy, "x", {"x", "y", "x + y"})), DomainError);
  CHECK_THROWS_AS(pfd_generic(make_rf(xy, "x^2", {"x", "x", "y"})), DomainError);
}

TEST_CASE("wavefunction coefficient") {
  const RationalFunction rf = load_rf("wavefunction.problem");
  const VarList& v = rf.vars();
  // Numerator assembled from the tubing formula.
  auto l = [&](int i) { return rf.form(static_cast<std::size_t>(i - 1)); };
  const std::vector<std::pair<int, int>> pairs{{9, 6}, {9, 7}, {10, 6}, {10, 8}, {11, 7}, {11, 8}};
  Polynomial bracket(v);
  for (const auto& [a, b] : pairs) {
    Polynomial p = Polynomial::constant(v, 1);
    for (int j = 6; j <= 11; ++j)
      if (j != a && j != b) p = p * l(j);
    bracket = bracket + p;
  }
  const Polynomial psi_numerator = parse_polynomial("8*Y14*Y24*Y34", v) * bracket;
  CHECK(psi_numerator == rf.numerator());

  const PfdDocument printed = load_doc("wavefunction_published.pfd");
  CHECK(printed.result.terms.size() == 38);
  CHECK(check_document(printed, rf).valid);
  CHECK(recombine(printed.result.terms, rf) == psi_numerator);
  const PfdCheck flipped = check_document(load_doc("wavefunction_flipped.pfd"), rf);
  CHECK_FALSE(flipped.valid);
  CHECK(flipped.reason == "terms do not recombine to the input numerator");

  PfdOptions o;
  o.method = MethodChoice::kLinear;
  const auto res = pfd(rf, o);
  REQUIRE(res.has_value());
  CHECK(res->degree == 7);
  CHECK(res->method == PfdMethod::kLinear);
  for (const auto& t : res->terms) {
    CHECK(t.numerator.is_constant());
    CHECK(t.denominator.size() == 4);
  }
  CHECK(verify_pfd(*res, rf));
}

TEST_CASE("non-unique decompositions and the reducibility criterion") {
  const RationalFunction rf = load_rf("nonunique.problem");
  const PfdDocument first = load_doc("nonunique_first.pfd");
  const PfdDocument second = load_doc("nonunique_second.pfd");
  CHECK(check_document(first, rf).valid);
  CHECK(check_document(second, rf).valid);
  CHECK(first.result.terms != second.result.terms);
  // Every summand of the printed expansion carries l2 = y + z, so f is
  // divisible by it and the second decomposition has the polynomial term 10.
  CHECK(divide_by_linear(rf.numerator(), rf.form(1)).has_value());
  CHECK(reducible_term_criterion(rf, 3));
  const auto red = reduced_exp(rf);
  CHECK(red.removed == std::vector<std::size_t>{1});
  const auto ours = pfd(red.function);
  REQUIRE(ours.has_value());
  CHECK(ours->degree == 2);
  const PfdResult lifted = remap(*ours, red.kept, rf.size());
  CHECK(lifted.degree == 3);
  CHECK(verify_pfd(lifted, rf));

  const VarList xy = make_vars({"x", "y"});
  CHECK(reducible_term_criterion(make_rf(xy, "x*(x + y)", {"x", "y"}), 1));
  CHECK_FALSE(reducible_term_criterion(make_rf(xy, "x^2 + y^2", {"x", "y", "x + y"}), 2));
  CHECK_THROWS_AS(reducible_term_criterion(make_rf(xy, "x^2 + y^2", {"x", "y", "x + y"}), 1), DomainError);
  CHECK_THROWS_AS(reducible_term_criterion(make_rf(xy, "x^2 + y^2", {"x", "2*x", "y"}), 2), DomainError);
  CHECK_THROWS_AS(reducible_term_criterion(load_rf("intro.problem"), 2), DomainError);
}

TEST_CASE("verification rejects malformed decompositions") {
  const RationalFunction rf = load_rf("intro.problem");
  PfdResult r = *pfd(rf);
  PfdResult bad = r;
  bad.terms[0].denominator = {0, 5};
  CHECK_FALSE(verify_pfd(bad, rf));
  bad = r;
  bad.terms[0].denominator = {0, 1, 2};
  CHECK(check_pfd(bad, rf).reason.find("exceed") != std::string::npos);
  bad = r;
  bad.terms[0].numerator = parse_polynomial("x", rf.vars());
  CHECK(check_pfd(bad, rf).reason.find("numerator degree") != std::string::npos);
  bad = r;
  bad.terms[0].numerator = Polynomial(rf.vars());
  CHECK_FALSE(verify_pfd(bad, rf));
}

TEST_CASE("affine decompositions") {
  const VarList xy = make_vars({"x", "y"});
  // (2x - 1)/(x (x - 1)) = 1/x + 1/(x - 1).
  const RationalFunction rf = make_rf(xy, "2*x - 1", {"x", "x - 1"}, Mode::kAffine);
  const auto res = pfd(rf);
  REQUIRE(res.has_value());
  CHECK(res->degree == 1);
  REQUIRE(res->terms.size() == 2);
  CHECK(res->terms[0] == PfdTerm{Polynomial::constant(xy, 1), {0}});
  CHECK(res->terms[1] == PfdTerm{Polynomial::constant(xy, 1), {1}});
  // 1/(x (x - 1)) = 1/(x - 1) - 1/x, but constant numerators exceed deg f - d = -1.
  CHECK_FALSE(pfd(make_rf(xy, "1", {"x", "x - 1"}, Mode::kAffine)).has_value());

  // y^2 over x (x - 1) y: y^2 lies in I_{L,2} but no degree-2 PFD exists.
  const RationalFunction rf2 = make_rf(xy, "y^2", {"x", "x - 1", "y + 1"}, Mode::kAffine);
  const auto r2 = pfd(rf2);
  REQUIRE(r2.has_value());
  CHECK(r2->degree == 1);
  CHECK(verify_pfd(*r2, rf2));
}

TEST_CASE("random decompositions: soundness, maximality, no new poles") {
  Rng rng(20240);
  int done = 0;
  while (done < 200) {
    const std::size_t r = static_cast<std::size_t>(rng.between(2, 3));
    const std::size_t n = static_cast<std::size_t>(rng.between(static_cast<long>(r), 5));
    const int d = static_cast<int>(rng.between(1, static_cast<long>(n)));
    const Mode mode = rng.coin() ? Mode::kAffine : Mode::kProjective;
    const auto rf = random_member_rf(rng, r, n, d, static_cast<int>(rng.between(0, 1)), mode);
    if (!rf) continue;
    ++done;
    CAPTURE(done);
    PfdOptions o;
    o.method = static_cast<MethodChoice>(rng.between(0, 2));
    const auto res = pfd(*rf, o);
    REQUIRE(res.has_value());
    CHECK(res->degree >= d);
    CHECK(verify_pfd(*res, *rf));
    CHECK(recombine(res->terms, *rf) == rf->numerator());
    for (const auto& t : res->terms) {
      CHECK(t.denominator.size() == n - static_cast<std::size_t>(res->degree));
      for (auto i : t.denominator) CHECK(i < n);
      CHECK(*t.numerator.total_degree() <= *rf->numerator().total_degree() - res->degree);
    }
    // Maximality against the bounded-degree oracle on the next degree.
    if (static_cast<std::size_t>(res->degree) < n) {
      const int next = res->degree + 1;
      const int bound = *rf->numerator().total_degree() - next;
      CHECK_FALSE((bound >= 0 && express_bounded_degree(rf->numerator(), products(*rf, next), bound).has_value()));
    }
  }
}

TEST_CASE("post-reduction non-divisibility") {
  Rng rng(616);
  for (int trial = 0; trial < 200; ++trial) {
    const VarList vars = pfdkit::testing::ring(static_cast<std::size_t>(rng.between(2, 3)));
    const std::size_t n = static_cast<std::size_t>(rng.between(1, 5));
    const auto forms = random_forms(rng, vars, n, rng.coin());
    Polynomial f = pfdkit::testing::random_poly(rng, vars, 2, 3);
    if (f.is_zero()) continue;
    for (const auto& l : forms)
      if (rng.coin()) f = f * l;
    const RationalFunction rf(f, forms, Mode::kAffine);
    const auto red = reduced_exp(rf);
    for (const auto& l : red.function.forms()) CHECK_FALSE(divide_by_linear(red.function.numerator(), l).has_value());
    // Same rational function: f * prod(kept) == reduced numerator * prod(all).
    Polynomial lhs = f, rhs = red.function.numerator();
    for (auto i : red.kept) lhs = lhs * forms[i];
    for (const auto& l : forms) rhs = rhs * l;
    CHECK(lhs == rhs);
    CHECK(red.kept.size() + red.removed.size() == n);
  }
}

TEST_CASE("coefficient-level additivity") {
  Rng rng(3141);
  int done = 0;
  while (done < 200) {
    const std::size_t r = static_cast<std::size_t>(rng.between(2, 3));
    const std::size_t n = static_cast<std::size_t>(rng.between(static_cast<long>(r), 5));
    const int d = static_cast<int>(rng.between(1, static_cast<long>(n)));
    const VarList vars = pfdkit::testing::ring(r);
    const auto forms = random_forms(rng, vars, n, false);
    const Arrangement a(vars, forms, Mode::kProjective);
    std::vector<Polynomial> gens;
    for (auto& g : dfold_generators(a, GeneratorSpec{d, std::nullopt})) gens.push_back(g.product);
    const int extra = static_cast<int>(rng.between(0, 1));
    const Polynomial f = random_combination(rng, gens, extra, true);
    const Polynomial g = random_combination(rng, gens, extra, true);
    if (f.is_zero() || g.is_zero() || (f + g).is_zero()) continue;
    const RationalFunction rf(f, forms, Mode::kProjective), rg(g, forms, Mode::kProjective),
        rfg(f + g, forms, Mode::kProjective);
    if (!is_fully_reduced(rf) || !is_fully_reduced(rg) || !is_fully_reduced(rfg)) continue;
    ++done;
    PfdOptions o;
    o.degree = d;
    o.method = rng.coin() ? MethodChoice::kGroebner : MethodChoice::kLinear;
    const auto pf = pfd(rf, o), pg = pfd(rg, o), pfg = pfd(rfg, o);
    REQUIRE((pf && pg && pfg));
    std::vector<PfdTerm> both = pf->terms;
    both.insert(both.end(), pg->terms.begin(), pg->terms.end());
    CHECK(as_map(merge_terms(both)) == as_map(pfg->terms));
  }
}

TEST_CASE("determinism") {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rf = random_member_rf(rng, 3, 5, static_cast<int>(rng.between(1, 4)), 1, Mode::kProjective);
    if (!rf) continue;
    const auto a = pfd(*rf), b = pfd(*rf);
    REQUIRE((a && b));
    CHECK(render_pfd_text(*a, *rf) == render_pfd_text(*b, *rf));
    CHECK(render_pfd_json(*a, *rf) == render_pfd_json(*b, *rf));
  }
}

TEST_CASE("iterative refinement") {
  Rng rng(27);
  int done = 0;
  while (done < 60) {
    const std::size_t n = static_cast<std::size_t>(rng.between(3, 5));
    const int d = static_cast<int>(rng.between(2, static_cast<long>(n)));
    const auto rf = random_member_rf(rng, 3, n, d, 1, rng.coin() ? Mode::kAffine : Mode::kProjective);
    if (!rf) continue;
    ++done;
    PfdOptions o;
    o.iterative_step = 1;
    const auto it = pfd(*rf, o);
    REQUIRE(it.has_value());
    CHECK(it->status == PfdStatus::kIterative);
    CHECK(verify_pfd(*it, *rf));
    CHECK(it->degree >= 1);
  }
}

TEST_CASE("restricted generators") {
  const RationalFunction rf = load_rf("wavefunction.problem");
  PfdOptions o;
  o.restriction = parse_restriction("# forms 1 and 2 always stay in the denominator\nexclude: 1 2\n", rf.size());
  o.method = MethodChoice::kLinear;
  o.degree = 7;
  const auto res = pfd(rf, o);
  // Whether the restricted ideal suffices is not known in advance; when it
  // does, every term keeps the excluded forms.
  if (res) {
    CHECK(res->status == PfdStatus::kLowerBound);
    CHECK(verify_pfd(*res, rf));
    for (const auto& t : res->terms) {
      CHECK(std::find(t.denominator.begin(), t.denominator.end(), 0) != t.denominator.end());
      CHECK(std::find(t.denominator.begin(), t.denominator.end(), 1) != t.denominator.end());
    }
  }

  const VarList xy = make_vars({"x", "y"});
  const RationalFunction lines = make_rf(xy, "x^2 + y^2", {"x", "y", "x + y", "x - y"});
  PfdOptions r;
  r.restriction = parse_restriction("subset: 1 2 3\n", 4);
  const auto lr = pfd(lines, r);
  REQUIRE(lr.has_value());
  CHECK(lr->status == PfdStatus::kLowerBound);
  CHECK(lr->degree == 2);
  CHECK(verify_pfd(*lr, lines));
  for (const auto& t : lr->terms) CHECK(std::find(t.denominator.begin(), t.denominator.end(), 3) != t.denominator.end());
  r.restriction = parse_restriction("allow: 1 2\n", 4);
  CHECK_FALSE(pfd(lines, r).has_value());

  const auto spec = parse_restriction("allow: 1 2\nsubset: 2 3 4\nexclude: 4\n", 4);
  CHECK(spec.masks(4, 2, 100) == std::vector<IndexMask>{0b0011, 0b0110});
  CHECK(spec.masks(4, 3, 100).empty());
  CHECK_THROWS_AS(parse_restriction("allow: 1 9\n", 4), InputError);
  try {
    parse_restriction("allow: 1\nkeep: 2\n", 4);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_restriction("exclude: 1\n", 4).masks(30, 15, 1000), ResourceLimitError);
}

TEST_CASE("document round trip") {
  const RationalFunction rf = load_rf("intro.problem");
  const auto res = pfd(rf);
  REQUIRE(res.has_value());
  const std::string text = render_pfd_text(*res, rf);
  const PfdDocument back = parse_pfd_document(text);
  CHECK(back.result.terms == res->terms);
  CHECK(back.result.degree == 1);
  CHECK(check_document(back, rf).valid);
  const PfdDocument json = parse_pfd_document(render_pfd_json(*res, rf));
  CHECK(json.result.terms == res->terms);
  CHECK(json.result.method == res->method);
  CHECK(render_pfd_text(json.result, rf) == text);

  CHECK_THROWS_AS(parse_pfd_document("pfd-document v2\n"), ParseError);
  CHECK_THROWS_AS(parse_pfd_document(text + "term: 1 | 1 2 | (y - 3*x)*(x + y)\n"), InputError);
  try {
    parse_pfd_document("pfd-document v1\nmode: projective\nvars: x y\nterm: 1 + | 1 | (x)\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  // Printed denominators must match the indexed forms.
  std::string wrong = text;
  const auto first_term = wrong.find("term: ");
  const auto last_bar = wrong.rfind('|', wrong.find('\n', first_term));
  wrong.replace(last_bar + 1, wrong.find('\n', first_term) - last_bar - 1, " (x)*(y)");
  CHECK(check_document(parse_pfd_document(wrong), rf).reason.find("printed denominator") != std::string::npos);
}
