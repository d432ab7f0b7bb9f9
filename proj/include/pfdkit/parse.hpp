#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pfdkit/mode.hpp"
#include "pfdkit/polynomial.hpp"

namespace pfdkit {

/// Parses a polynomial expression over `vars`.
///
/// Grammar: `+ - * / ^ ( )`, integer literals, identifiers. `^` binds
/// tightest and takes a non-negative integer literal; unary minus is allowed;
/// implicit multiplication is not. Division is only allowed by a nonzero
/// constant, so `3/4*x` is fine but `x/y` is an error. Errors carry 1-based
/// line/column positions (offset by `first_line`/`first_column`).
Polynomial parse_polynomial(std::string_view text, const VarList& vars, int first_line = 1, int first_column = 1);

struct ProblemFile {
  Mode mode = Mode::kProjective;
  VarList vars;
  Polynomial numerator;
  std::vector<Polynomial> denominators;
  bool allow_zero_forms = false;
};

/// Parses the problem file format:
///
///     mode: affine | projective
///     vars: x y z
///     numerator: <expr>
///     denominators:
///       <one linear form per line>
///
/// Blank lines and `#` comments are ignored; `allow-zero-forms: true` admits
/// zero denominators for decomposition-only inputs.
ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::string& path);

std::string render_polynomial(const Polynomial& f);
/// Problem file text that parse_problem reads back to an equal problem.
std::string render_problem(const ProblemFile& problem);

std::string read_text_file(const std::string& path);

}  // namespace pfdkit
