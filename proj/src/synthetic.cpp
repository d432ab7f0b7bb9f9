#include "pfdkit/synthetic.hpp"

#include "pfdkit/error.hpp"

namespace pfdkit {

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Polynomial random_coefficient(const VarList& vars, int degree, std::mt19937_64& rng) {
  Polynomial c(vars);
  const std::size_t n = vars->size();
  for (int k = 0; k < 3; ++k) {
    const int e = k == 0 ? degree : static_cast<int>(uniform(rng, 0, degree));
    Monomial m(n);
    for (int j = 0; j < e; ++j) {
      const std::size_t v = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
      m.set(v, m[v] + 1);
    }
    long coeff = 0;
    while (coeff == 0) coeff = uniform(rng, -3, 3);
    c += Polynomial::from_terms(vars, {{m, Rational(coeff)}});
  }
  return c;
}

}  // namespace

Polynomial synthetic_member(const Arrangement& a, const SyntheticSpec& spec, std::mt19937_64& rng) {
  if (spec.picks < 1) throw DomainError("synthetic numerator needs at least one generator");
  const auto gens = dfold_generators(a, GeneratorSpec{spec.d, spec.allowed, 10000000});
  if (gens.empty()) throw DomainError("no generators to combine");
  for (int attempt = 0; attempt < 100; ++attempt) {
    Polynomial f(a.vars());
    for (int k = 0; k < spec.picks; ++k) {
      const auto& g = gens[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(gens.size()) - 1))];
      f += random_coefficient(a.vars(), spec.coefficient_degree, rng) * g.product;
    }
    if (!f.is_zero() && *f.total_degree() == spec.d + spec.coefficient_degree) return f;
  }
  throw DomainError("could not build a synthetic numerator of the requested degree");
}

}  // namespace pfdkit
