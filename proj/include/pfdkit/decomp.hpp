#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfdkit/ideal.hpp"
#include "pfdkit/matroid.hpp"

namespace pfdkit {

/// (I_S)^exponent for a flat S.
struct PrimaryComponent {
  FlatSet flat;
  int exponent = 1;
  Mode mode = Mode::kProjective;

  friend bool operator==(const PrimaryComponent&, const PrimaryComponent&) = default;
};

/// One component per flat of size >= n - d + 1 with exponent d - n + |S|,
/// ordered by size descending, then lexicographically.
std::vector<PrimaryComponent> primary_decomposition_projective(const Arrangement& a, int d);
/// Components of the homogenized arrangement, minus flats whose span contains
/// the hyperplane at infinity. May be empty (then I_{L,d} is the unit ideal).
std::vector<PrimaryComponent> primary_decomposition_affine(const Arrangement& a, int d);
/// Dispatches on a.mode().
std::vector<PrimaryComponent> primary_decomposition(const Arrangement& a, int d);

/// True when the span of the forms of S (with constant column) contains the
/// hyperplane at infinity, i.e. the affine forms have no common zero.
bool supported_at_infinity(const Arrangement& a, const FlatSet& s);

/// Generators of (I_S)^exponent.
std::vector<Polynomial> component_generators(const Arrangement& a, const PrimaryComponent& c);

/// Largest k with f in (I_S)^k. f must be nonzero.
int vanishing_order(const Polynomial& f, const Arrangement& a, const FlatSet& s);

struct FlatsVerdict {
  bool holds = true;
  /// First violating flat (indices refer to the arrangement's forms).
  std::optional<FlatSet> witness;
  int required = 0;
  int order = 0;
  /// Witness flat lies at infinity (affine existence test only).
  bool at_infinity = false;

  int deficit() const { return required - order; }
};

/// f in I_{L,d}, decided through the flats of the decomposition.
FlatsVerdict member_via_flats(const Polynomial& f, const Arrangement& a, int d);

/// A PFD of degree d with deg c_T <= deg f - d exists. Projective: same as
/// member_via_flats. Affine: flats criterion for the homogenized numerator
/// against all flats of the homogenized arrangement, those at infinity included.
FlatsVerdict exists_pfd_via_flats(const Polynomial& f, const Arrangement& a, int d);

struct DecompositionOptions {
  /// ResourceLimitError above this many components.
  std::size_t max_components = 64;
  std::size_t max_pairs = 0;
};

/// Intersection of the components equals I_{L,d}.
bool verify_decomposition(const Arrangement& a, int d, const std::vector<PrimaryComponent>& components,
                          const DecompositionOptions& options = {});

/// Greedily drops components (in the given order) whose removal keeps the
/// intersection equal to I_{L,d}.
std::vector<PrimaryComponent> minimal_decomposition(const Arrangement& a, int d,
                                                    std::vector<PrimaryComponent> components,
                                                    const DecompositionOptions& options = {});

/// "{1,2,5} <x, y, x - y>^2", 1-based indices.
std::string render_component(const Arrangement& a, const PrimaryComponent& c);

}  // namespace pfdkit
