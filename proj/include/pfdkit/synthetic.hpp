#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pfdkit/ideal.hpp"
#include "pfdkit/matroid.hpp"

namespace pfdkit {

/// Random element of the ideal generated by the selected d-fold products:
/// `picks` generators, each times a random polynomial of degree at most
/// `coefficient_degree` with small integer coefficients. The top-degree part
/// is forced so that deg f = d + coefficient_degree whenever the sum is nonzero.
struct SyntheticSpec {
  int d = 1;
  int coefficient_degree = 0;
  int picks = 10;
  std::optional<std::vector<IndexMask>> allowed;
};

Polynomial synthetic_member(const Arrangement& a, const SyntheticSpec& spec, std::mt19937_64& rng);

}  // namespace pfdkit
