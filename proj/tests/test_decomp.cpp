#include "doctest.h"

#include <map>
#include <set>

#include "pfdkit/decomp.hpp"
#include "pfdkit/error.hpp"
#include "support.hpp"

using namespace pfdkit;
using pfdkit::testing::Rng;

namespace {

Arrangement from_fixture(const std::string& name, bool allow_zero = false) {
  const ProblemFile p = pfdkit::testing::load_fixture(name);
  return Arrangement(p.vars, p.denominators, p.mode, allow_zero);
}

Arrangement arrangement(const VarList& vars, const std::vector<std::string>& forms, Mode mode) {
  std::vector<Polynomial> ls;
  for (const auto& f : forms) ls.push_back(parse_polynomial(f, vars));
  return Arrangement(vars, ls, mode);
}

PrimaryComponent component(std::vector<std::size_t> indices, int e, Mode mode = Mode::kProjective) {
  return PrimaryComponent{make_flat(to_mask(indices)), e, mode};
}

std::vector<Polynomial> products(const Arrangement& a, int d) {
  std::vector<Polynomial> out;
  for (auto& g : dfold_generators(a, GeneratorSpec{d, std::nullopt})) out.push_back(g.product);
  return out;
}

Arrangement random_arrangement(Rng& rng, std::size_t r, std::size_t n, Mode mode, long bound = 1) {
  const VarList vars = pfdkit::testing::ring(r);
  std::vector<Polynomial> forms;
  for (std::size_t i = 0; i < n; ++i)
    forms.push_back(pfdkit::testing::random_linear(rng, vars, mode == Mode::kAffine, bound));
  return Arrangement(vars, forms, mode);
}

Polynomial random_member(Rng& rng, const std::vector<Polynomial>& gens, int extra, bool homogeneous) {
  Polynomial f(gens.front().vars());
  for (const auto& g : gens)
    if (rng.between(0, 2) == 0) f += pfdkit::testing::random_poly(rng, g.vars(), extra, 2, 0, homogeneous) * g;
  return f;
}

// Plain intersection oracle, independent of verify_decomposition.
bool intersection_equals(const Arrangement& a, const std::vector<PrimaryComponent>& cs, const IdealWithBasis& target) {
  IdealWithBasis acc({Polynomial::constant(a.vars(), 1)});
  for (const auto& c : cs) {
    std::vector<Polynomial> forms;
    for (auto i : c.flat.indices) forms.push_back(a.form(i));
    acc = intersect(acc, IdealWithBasis(linear_ideal_power(forms, c.exponent)));
  }
  return ideal_equal(acc, target);
}

}  // namespace

TEST_CASE("braid B5 at d = 8") {
  const Arrangement b5 = braid_arrangement(5);
  const auto cs = primary_decomposition_projective(b5, 8);
  std::map<std::pair<std::string, int>, int> census;
  for (const auto& c : cs) census[{braid_flat_type(5, c.flat.mask).to_string(), c.exponent}]++;
  const std::map<std::pair<std::string, int>, int> expected{
      {{"(5)", 8}, 1}, {{"(4,1)", 4}, 5}, {{"(3,2)", 2}, 10}, {{"(3,1,1)", 1}, 10}};
  CHECK(census == expected);
  CHECK(cs.front().flat.size() == 10);
  for (std::size_t i = 1; i < cs.size(); ++i) {
    CHECK(cs[i - 1].flat.size() >= cs[i].flat.size());
    if (cs[i - 1].flat.size() == cs[i].flat.size()) CHECK(cs[i - 1].flat < cs[i].flat);
  }
}

TEST_CASE("adjoint arrangement at d = 3") {
  const Arrangement a = from_fixture("adjoint.problem");
  const auto cs = primary_decomposition_projective(a, 3);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == component({0, 1, 2, 3, 4, 5, 6}, 3));
  CHECK(cs[1] == component({0, 1, 2, 3, 4}, 1));
  CHECK(render_component(a, cs[1]) ==
        "{1,2,3,4,5} <x2 - x4, 2*x1 + x2 - 2*x4, -2*x1 + x2 + 2*x4, 2*x1 + x2 + 2*x4, -2*x1 + x2 - 2*x4>^1");
  CHECK(verify_decomposition(a, 3, cs));
}

TEST_CASE("generic arrangement at d = n - r + 1 has one component") {
  const VarList xyz = make_vars({"x", "y", "z"});
  const Arrangement a = arrangement(xyz, {"x", "y", "z", "x + y + z", "x + 2*y + 3*z"}, Mode::kProjective);
  const auto cs = primary_decomposition_projective(a, 3);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0] == component({0, 1, 2, 3, 4}, 3));
  CHECK(verify_decomposition(a, 3, cs));
  CHECK_THROWS_AS(primary_decomposition_projective(a, 0), DomainError);
  CHECK_THROWS_AS(primary_decomposition_projective(a, 6), DomainError);
}

TEST_CASE("matrix examples at d = 4") {
  // First matrix: columns 0, e1, e1, e1, e2, e3.
  const Arrangement loop = from_fixture("matrix_loop.problem", true);
  const std::vector<PrimaryComponent> printed1{component({0, 1, 2, 3}, 2), component({0, 4, 5}, 1),
                                               component({0, 1, 2, 3, 4}, 3), component({0, 1, 2, 3, 5}, 3)};
  CHECK(verify_decomposition(loop, 4, printed1));
  const auto ours1 = primary_decomposition_projective(loop, 4);
  CHECK(ours1.size() == 5);
  CHECK(verify_decomposition(loop, 4, ours1));
  const auto min1 = minimal_decomposition(loop, 4, ours1);
  REQUIRE(min1.size() == 4);
  for (const auto& c : printed1) CHECK(std::find(min1.begin(), min1.end(), c) != min1.end());
  const IdealWithBasis target1(products(loop, 4));
  CHECK(intersection_equals(loop, printed1, target1));
  CHECK_FALSE(intersection_equals(loop, {printed1[0], printed1[1], printed1[2]}, target1));

  // Second matrix: columns e1, e1, e1, e2, e2, e3.
  const Arrangement par = from_fixture("matrix_parallel.problem");
  const std::vector<PrimaryComponent> printed2{component({0, 1, 2}, 1), component({0, 1, 2, 3, 4}, 3),
                                               component({0, 1, 2, 5}, 2), component({3, 4, 5}, 1),
                                               component({0, 1, 2, 3, 4, 5}, 4)};
  CHECK(verify_decomposition(par, 4, printed2));
  const auto ours2 = primary_decomposition_projective(par, 4);
  REQUIRE(ours2.size() == 5);
  for (const auto& c : printed2) CHECK(std::find(ours2.begin(), ours2.end(), c) != ours2.end());
  CHECK(minimal_decomposition(par, 4, ours2) == ours2);
}

TEST_CASE("affine decomposition of five lines") {
  const Arrangement a = from_fixture("affine_lines.problem");
  const auto cs = primary_decomposition_affine(a, 3);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == component({0, 1, 4}, 1, Mode::kAffine));
  CHECK(cs[1] == component({2, 3, 4}, 1, Mode::kAffine));
  CHECK(verify_decomposition(a, 3, cs));
  const VarList xy = a.vars();
  const IdealWithBasis expected =
      intersect(IdealWithBasis({parse_polynomial("x", xy), parse_polynomial("y", xy)}),
                IdealWithBasis({parse_polynomial("x - 1", xy), parse_polynomial("y - 1", xy)}));
  CHECK(intersection_equals(a, cs, expected));

  // The homogenized decomposition also has the full flat with exponent 3.
  const Arrangement h = a.homogenized("z");
  const auto hs = primary_decomposition_projective(h, 3);
  REQUIRE(hs.size() == 3);
  CHECK(hs[0] == component({0, 1, 2, 3, 4}, 3));
  CHECK(supported_at_infinity(a, hs[0].flat));
  CHECK_FALSE(supported_at_infinity(a, hs[1].flat));

  // Translation keeps the census.
  const Arrangement moved = arrangement(xy, {"x + 2", "y - 3", "x + 1", "y - 4", "x - y + 5"}, Mode::kAffine);
  const auto ms = primary_decomposition_affine(moved, 3);
  REQUIRE(ms.size() == cs.size());
  for (std::size_t i = 0; i < ms.size(); ++i) CHECK(ms[i].flat == cs[i].flat);
}

TEST_CASE("affine arrangement without components") {
  const VarList x = make_vars({"x"});
  const Arrangement a = arrangement(x, {"x", "x - 1", "x - 2"}, Mode::kAffine);
  CHECK(primary_decomposition_affine(a, 1).empty());
  CHECK(verify_decomposition(a, 1, {}));
  CHECK(member(Polynomial::constant(x, 1), IdealWithBasis(products(a, 1))));
}

TEST_CASE("vanishing orders") {
  const VarList xy = make_vars({"x", "y"});
  const Arrangement a = arrangement(xy, {"x", "y", "x + y"}, Mode::kProjective);
  CHECK(vanishing_order(parse_polynomial("x^2*y", xy), a, make_flat(0b001)) == 2);
  CHECK(vanishing_order(parse_polynomial("y^3", xy), a, make_flat(0b001)) == 0);
  CHECK(vanishing_order(parse_polynomial("x^2*y", xy), a, make_flat(0b111)) == 3);
  CHECK_THROWS_AS(vanishing_order(Polynomial(xy), a, make_flat(0b001)), DomainError);

  const ProblemFile w = pfdkit::testing::load_fixture("wavefunction.problem");
  const Arrangement wa(w.vars, w.denominators, w.mode);
  int size10 = 0;
  for (const auto& s : flats_min_size(wa, 10)) {
    if (s.size() != 10) continue;
    ++size10;
    CHECK(vanishing_order(w.numerator, wa, s) >= 6);
  }
  CHECK(size10 == 3);
}

TEST_CASE("flats criterion on the introductory example") {
  const ProblemFile intro = pfdkit::testing::load_fixture("intro.problem");
  const Arrangement a(intro.vars, intro.denominators, intro.mode);
  CHECK(exists_pfd_via_flats(intro.numerator, a, 1).holds);
  const FlatsVerdict v = exists_pfd_via_flats(intro.numerator, a, 2);
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->mask == a.ground_set());
  CHECK(v.required == 2);
  CHECK(v.order == 1);
  CHECK(v.deficit() == 1);
}

TEST_CASE("affine membership versus bounded-degree existence") {
  const VarList xy = make_vars({"x", "y"});
  const Arrangement a = arrangement(xy, {"x", "x - 1", "y"}, Mode::kAffine);
  const Polynomial f = parse_polynomial("y^2", xy);
  const auto gens = products(a, 2);
  CHECK(member(f, IdealWithBasis(gens)));
  CHECK(member_via_flats(f, a, 2).holds);
  CHECK_FALSE(express_bounded_degree(f, gens, 0).has_value());
  const FlatsVerdict v = exists_pfd_via_flats(f, a, 2);
  CHECK_FALSE(v.holds);
  CHECK(v.at_infinity);
}

TEST_CASE("random decompositions intersect to I_{L,d}") {
  Rng rng(31337);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = static_cast<std::size_t>(rng.between(2, 3));
    const std::size_t n = static_cast<std::size_t>(rng.between(static_cast<long>(r), 5));
    const Mode mode = rng.coin() ? Mode::kAffine : Mode::kProjective;
    const Arrangement a = random_arrangement(rng, r, n, mode);
    for (int d = 1; d <= static_cast<int>(n); ++d) {
      CAPTURE(trial);
      CAPTURE(d);
      const auto cs = primary_decomposition(a, d);
      CHECK(verify_decomposition(a, d, cs));
      CHECK(intersection_equals(a, cs, IdealWithBasis(products(a, d))));
    }
  }
}

TEST_CASE("extra non-flat components are redundant") {
  Rng rng(4242);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Arrangement a = random_arrangement(rng, 3, 5, Mode::kProjective);
    const int d = static_cast<int>(rng.between(2, 4));
    auto cs = primary_decomposition_projective(a, d);
    const std::size_t t = a.size() - static_cast<std::size_t>(d) + 1;
    for (std::size_t k = t; k <= a.size(); ++k)
      for_each_subset(a.size(), static_cast<int>(k), [&](IndexMask s) {
        if (!a.is_flat(s)) cs.push_back(PrimaryComponent{make_flat(s), d - static_cast<int>(a.size()) + popcount(s)});
      });
    if (cs.size() == primary_decomposition_projective(a, d).size()) continue;
    ++checked;
    CHECK(intersection_equals(a, cs, IdealWithBasis(products(a, d))));
  }
  CHECK(checked > 5);
}

TEST_CASE("flats criterion agrees with Groebner membership") {
  Rng rng(8128);
  int yes = 0, no = 0;
  while (yes + no < 200) {
    const std::size_t r = static_cast<std::size_t>(rng.between(2, 3));
    const std::size_t n = static_cast<std::size_t>(rng.between(static_cast<long>(r), 6));
    const int d = static_cast<int>(rng.between(1, static_cast<long>(n) - 1));
    const Mode mode = rng.coin() ? Mode::kAffine : Mode::kProjective;
    const Arrangement a = random_arrangement(rng, r, n, mode);
    const auto gens = products(a, d);
    const bool homogeneous = mode == Mode::kProjective;
    Polynomial f = random_member(rng, gens, 1, homogeneous);
    if (rng.coin()) f += pfdkit::testing::random_poly(rng, a.vars(), d + 1, 1, 0, homogeneous);
    if (f.is_zero()) continue;
    const bool gb = member(f, IdealWithBasis(gens));
    CHECK(member_via_flats(f, a, d).holds == gb);
    const int bound = *f.total_degree() - d;
    const bool bounded = bound >= 0 && express_bounded_degree(f, gens, bound).has_value();
    if (bound >= 0) CHECK(exists_pfd_via_flats(f, a, d).holds == bounded);
    (gb ? yes : no)++;
  }
  CHECK(yes > 20);
  CHECK(no > 20);
}

TEST_CASE("existence is monotone in d") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Arrangement a = random_arrangement(rng, 3, 5, rng.coin() ? Mode::kAffine : Mode::kProjective);
    const int d = static_cast<int>(rng.between(2, 5));
    const Polynomial f = random_member(rng, products(a, d), 1, a.mode() == Mode::kProjective);
    if (f.is_zero()) continue;
    for (int e = 1; e <= d; ++e) CHECK(member_via_flats(f, a, e).holds);
  }
}
