#pragma once

// Seeded generators shared by the property suites. The mapping from engine
// output to values is fixed here so that runs are reproducible across
// standard libraries.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pfdkit/parse.hpp"
#include "pfdkit/polynomial.hpp"

namespace pfdkit::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi].
  long between(long lo, long hi) {
    return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return (engine_() & 1u) != 0; }

  Rational rational(long bound = 5) {
    const long num = between(-bound, bound);
    const long den = between(1, 3);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

 private:
  std::mt19937_64 engine_;
};

inline std::string fixture_path(const std::string& name) { return std::string(PFDKIT_FIXTURE_DIR) + "/" + name; }

inline ProblemFile load_fixture(const std::string& name) { return load_problem(fixture_path(name)); }

inline VarList ring(std::size_t n) {
  static const char* names[] = {"x", "y", "z", "w", "u", "v", "s", "t"};
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(names[i]);
  return make_vars(v);
}

/// Random polynomial with at most `terms` terms of total degree in [min_deg, max_deg].
inline Polynomial random_poly(Rng& rng, const VarList& vars, int max_deg, int terms, int min_deg = 0,
                              bool homogeneous = false) {
  std::vector<Term> out;
  for (int t = 0; t < terms; ++t) {
    const int deg = homogeneous ? max_deg : static_cast<int>(rng.between(min_deg, max_deg));
    Monomial m(vars->size());
    for (int k = 0; k < deg; ++k) {
      const auto i = static_cast<std::size_t>(rng.between(0, static_cast<long>(vars->size()) - 1));
      m.set(i, m[i] + 1);
    }
    out.push_back({m, rng.rational()});
  }
  return Polynomial::from_terms(vars, std::move(out));
}

/// Random nonzero linear polynomial; `affine` adds a random constant term.
inline Polynomial random_linear(Rng& rng, const VarList& vars, bool affine, long bound = 3) {
  for (;;) {
    RationalVector c(vars->size());
    for (auto& x : c) x = Rational(rng.between(-bound, bound));
    const Rational k = affine ? Rational(rng.between(-bound, bound)) : Rational(0);
    Polynomial l = linear_form(vars, c, k);
    if (l.total_degree() == 1) return l;
  }
}

}  // namespace pfdkit::testing
