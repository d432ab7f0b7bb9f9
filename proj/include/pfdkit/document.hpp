#pragma once

#include <string>
#include <vector>

#include "pfdkit/pfd.hpp"

namespace pfdkit {

/// A PFD as read from disk. `denominators[k]` is the product written next to
/// term k, checked against the problem's forms on verification.
struct PfdDocument {
  Mode mode = Mode::kProjective;
  VarList vars;
  PfdResult result;
  std::vector<Polynomial> denominators;
};

/// Text form:
///
///     pfd-document v1
///     mode: projective
///     vars: x y
///     degree: 1
///     method: linear
///     status: maximal
///     terms: 3
///     term: <numerator> | <1-based indices> | <product of forms>
///
/// `#` starts a comment.
std::string render_pfd_text(const PfdResult& result, const RationalFunction& rf);
/// JSON mirror: {"format", "version", "mode", "vars", "degree", "method",
/// "status", "terms": [{"numerator", "denominator", "forms"}]}.
std::string render_pfd_json(const PfdResult& result, const RationalFunction& rf);

/// Reads either form (JSON when the first non-blank character is '{').
PfdDocument parse_pfd_document(const std::string& text);
PfdDocument load_pfd_document(const std::string& path);

/// Ring and mode match, printed denominators equal the indexed forms, and check_pfd passes.
PfdCheck check_document(const PfdDocument& doc, const RationalFunction& rf);

/// "(x + y)*(x - 2*y)", or "1" for an empty index list.
std::string render_denominator(const RationalFunction& rf, const std::vector<std::size_t>& indices);

}  // namespace pfdkit
