#include "pfdkit/decomp.hpp"

#include <algorithm>

#include "pfdkit/error.hpp"

namespace pfdkit {

namespace {

void check_degree(const Arrangement& a, int d) {
  if (d < 1 || static_cast<std::size_t>(d) > a.size())
    throw DomainError("degree d = " + std::to_string(d) + " outside [1, " + std::to_string(a.size()) + "]");
}

std::vector<PrimaryComponent> components_from_flats(const Arrangement& a, int d, Mode mode, bool drop_infinite) {
  check_degree(a, d);
  const std::size_t n = a.size();
  const std::size_t t = n - static_cast<std::size_t>(d) + 1;
  std::vector<PrimaryComponent> out;
  for (auto& s : flats_min_size(a, t)) {
    if (drop_infinite && supported_at_infinity(a, s)) continue;
    const int e = d - static_cast<int>(n) + static_cast<int>(s.size());
    out.push_back(PrimaryComponent{std::move(s), e, mode});
  }
  std::stable_sort(out.begin(), out.end(), [](const PrimaryComponent& x, const PrimaryComponent& y) {
    if (x.flat.size() != y.flat.size()) return x.flat.size() > y.flat.size();
    return x.flat < y.flat;
  });
  return out;
}

std::vector<Polynomial> forms_of(const Arrangement& a, const FlatSet& s) {
  std::vector<Polynomial> forms;
  for (auto i : s.indices)
    if (!a.form(i).is_zero()) forms.push_back(a.form(i));
  return forms;
}

FlatsVerdict check_flats(const Polynomial& f, const Arrangement& a, int d, bool drop_infinite, bool mark_infinity) {
  check_degree(a, d);
  if (f.is_zero()) throw DomainError("flats criterion: numerator is zero");
  FlatsVerdict v;
  const std::size_t n = a.size();
  for (const auto& s : flats_min_size(a, n - static_cast<std::size_t>(d) + 1)) {
    const bool infinite = supported_at_infinity(a, s);
    if (drop_infinite && infinite) continue;
    const int need = d - static_cast<int>(n) + static_cast<int>(s.size());
    const int k = vanishing_order(f, a, s);
    if (k < need) {
      v.holds = false;
      v.witness = s;
      v.required = need;
      v.order = k;
      v.at_infinity = mark_infinity && infinite;
      return v;
    }
  }
  return v;
}

IdealWithBasis unit_ideal(const VarList& vars) { return IdealWithBasis({Polynomial::constant(vars, 1)}); }

IdealWithBasis intersect_all(const Arrangement& a, const std::vector<PrimaryComponent>& components,
                             const DecompositionOptions& options) {
  if (components.size() > options.max_components)
    throw ResourceLimitError(std::to_string(components.size()) + " components exceed the cap of " +
                             std::to_string(options.max_components));
  if (components.empty()) return unit_ideal(a.vars());
  IdealWithBasis acc(component_generators(a, components.front()), {}, options.max_pairs);
  for (std::size_t i = 1; i < components.size(); ++i)
    acc = intersect(acc, IdealWithBasis(component_generators(a, components[i]), {}, options.max_pairs));
  return acc;
}

IdealWithBasis target_ideal(const Arrangement& a, int d, const DecompositionOptions& options) {
  std::vector<Polynomial> gens;
  for (auto& g : dfold_generators(a, GeneratorSpec{d, std::nullopt})) gens.push_back(std::move(g.product));
  return IdealWithBasis(std::move(gens), {}, options.max_pairs);
}

}  // namespace

std::vector<PrimaryComponent> primary_decomposition_projective(const Arrangement& a, int d) {
  if (a.mode() != Mode::kProjective) throw DomainError("projective decomposition of an affine arrangement");
  return components_from_flats(a, d, Mode::kProjective, false);
}

std::vector<PrimaryComponent> primary_decomposition_affine(const Arrangement& a, int d) {
  // The matroid of an affine arrangement already includes the constant column,
  // so its flats are those of the homogenization.
  return components_from_flats(a, d, Mode::kAffine, true);
}

std::vector<PrimaryComponent> primary_decomposition(const Arrangement& a, int d) {
  return a.mode() == Mode::kAffine ? primary_decomposition_affine(a, d) : primary_decomposition_projective(a, d);
}

bool supported_at_infinity(const Arrangement& a, const FlatSet& s) {
  if (a.mode() != Mode::kAffine) return false;
  const RationalMatrix& c = a.coefficients();
  LinearSpan span(c.cols());
  for (auto i : s.indices) span.add(c.row(i));
  RationalVector e(c.cols(), Rational(0));
  e.back() = 1;
  return span.contains(e);
}

std::vector<Polynomial> component_generators(const Arrangement& a, const PrimaryComponent& c) {
  return linear_ideal_power(forms_of(a, c.flat), c.exponent);
}

int vanishing_order(const Polynomial& f, const Arrangement& a, const FlatSet& s) {
  if (f.is_zero()) throw DomainError("vanishing order of the zero polynomial");
  const auto forms = forms_of(a, s);
  if (forms.empty()) return 0;
  return *linear_vanishing_order(f, forms);
}

FlatsVerdict member_via_flats(const Polynomial& f, const Arrangement& a, int d) {
  return check_flats(f, a, d, a.mode() == Mode::kAffine, false);
}

FlatsVerdict exists_pfd_via_flats(const Polynomial& f, const Arrangement& a, int d) {
  if (a.mode() == Mode::kProjective) return check_flats(f, a, d, false, false);
  if (f.is_zero()) throw DomainError("flats criterion: numerator is zero");
  const Arrangement h = a.homogenized(fresh_variable(a.vars(), "_h"));
  const Polynomial fh = homogenize_into(f, h.vars(), *f.total_degree());
  FlatsVerdict v = check_flats(fh, h, d, false, false);
  if (v.witness) v.at_infinity = supported_at_infinity(a, *v.witness);
  return v;
}

bool verify_decomposition(const Arrangement& a, int d, const std::vector<PrimaryComponent>& components,
                          const DecompositionOptions& options) {
  check_degree(a, d);
  return ideal_equal(intersect_all(a, components, options), target_ideal(a, d, options));
}

std::vector<PrimaryComponent> minimal_decomposition(const Arrangement& a, int d,
                                                    std::vector<PrimaryComponent> components,
                                                    const DecompositionOptions& options) {
  check_degree(a, d);
  const IdealWithBasis target = target_ideal(a, d, options);
  for (std::size_t i = 0; i < components.size();) {
    std::vector<PrimaryComponent> rest = components;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (ideal_equal(intersect_all(a, rest, options), target))
      components = std::move(rest);
    else
      ++i;
  }
  return components;
}

std::string render_component(const Arrangement& a, const PrimaryComponent& c) {
  std::string out = "{";
  for (std::size_t k = 0; k < c.flat.indices.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(c.flat.indices[k] + 1);
  }
  out += "} <";
  bool first = true;
  for (auto i : c.flat.indices) {
    if (a.form(i).is_zero()) continue;
    if (!first) out += ", ";
    first = false;
    out += to_string(a.form(i));
  }
  out += ">^" + std::to_string(c.exponent);
  return out;
}

}  // namespace pfdkit
