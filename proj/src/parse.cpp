#include "pfdkit/parse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "pfdkit/error.hpp"

namespace pfdkit {

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const VarList& vars, int line, int column)
      : text_(text), vars_(vars), line_(line), column_(column) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    Polynomial p = expression();
    skip_space();
    if (!at_end()) fail(std::string("unexpected character '") + peek() + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    advance();
    return true;
  }

  Polynomial expression() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      skip_space();
      const int line = line_, column = column_;
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        const Polynomial divisor = unary();
        if (!divisor.is_constant()) throw ParseError("division by a non-constant expression", line, column);
        if (divisor.is_zero()) throw ParseError("division by zero", line, column);
        acc = acc.scaled(1 / divisor.constant_term());
      } else {
        skip_space();
        if (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '('))
          fail("implicit multiplication is not allowed; use '*'");
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_space();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be a non-negative integer literal");
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += peek();
        advance();
      }
      if (digits.size() > 3) fail("exponent too large");
      base = base.pow(std::stoi(digits));
      skip_space();
      if (peek() == '^') fail("chained '^' is ambiguous; use parentheses");
    }
    return base;
  }

  Polynomial primary() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    const char c = peek();
    if (c == '(') {
      advance();
      Polynomial inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += peek();
        advance();
      }
      if (peek() == '.' || peek() == 'e' || peek() == 'E') fail("only integer and p/q rational literals are allowed");
      return Polynomial::constant(vars_, Rational(Integer(digits)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const int line = line_, column = column_;
      std::string name;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        name += peek();
        advance();
      }
      const auto& names = *vars_;
      const auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) throw ParseError("unknown variable '" + name + "'", line, column);
      return Polynomial::variable(vars_, static_cast<std::size_t>(it - names.begin()));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const VarList& vars_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Drops a trailing `#` comment.
std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return hash == std::string_view::npos ? s : s.substr(0, hash);
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VarList& vars, int first_line, int first_column) {
  return ExpressionParser(text, vars, first_line, first_column).parse();
}

ProblemFile parse_problem(std::string_view text) {
  ProblemFile problem;
  bool have_mode = false;
  bool in_denominators = false;
  std::string numerator_text;
  int numerator_line = 0, numerator_column = 0;
  struct Pending {
    std::string text;
    int line;
    int column;
  };
  std::vector<Pending> denominators;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const std::string_view content = strip_comment(raw);
    const std::string_view line = trim(content);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const int indent = static_cast<int>(content.find_first_not_of(" \t"));
    const auto colon = line.find(':');
    const std::string key = colon == std::string_view::npos ? "" : std::string(trim(line.substr(0, colon)));
    const bool keyed = indent == 0 && (key == "mode" || key == "vars" || key == "numerator" ||
                                       key == "denominators" || key == "allow-zero-forms");
    if (!keyed) {
      if (!in_denominators) throw ParseError("expected 'key: value' line", line_no, indent + 1);
      denominators.push_back({std::string(line), line_no, indent + 1});
      continue;
    }
    in_denominators = false;
    const std::string_view value = trim(line.substr(colon + 1));
    const std::size_t raw_colon = content.find(':');
    const std::size_t value_offset = content.find_first_not_of(" \t", raw_colon + 1);
    const int value_column = static_cast<int>(value_offset == std::string_view::npos ? raw_colon + 1 : value_offset) + 1;
    if (key == "mode") {
      if (value == "affine") problem.mode = Mode::kAffine;
      else if (value == "projective") problem.mode = Mode::kProjective;
      else throw ParseError("mode must be 'affine' or 'projective'", line_no, value_column);
      have_mode = true;
    } else if (key == "vars") {
      std::istringstream is{std::string(value)};
      std::vector<std::string> names;
      for (std::string n; is >> n;) names.push_back(n);
      if (names.empty()) throw ParseError("no variables declared", line_no, value_column);
      try {
        problem.vars = make_vars(std::move(names));
      } catch (const InputError& e) {
        throw ParseError(e.what(), line_no, value_column);
      }
    } else if (key == "numerator") {
      numerator_text = std::string(value);
      numerator_line = line_no;
      numerator_column = value_column;
    } else if (key == "denominators") {
      in_denominators = true;
      if (!value.empty()) throw ParseError("denominators go on the following lines", line_no, value_column);
    } else if (key == "allow-zero-forms") {
      if (value == "true") problem.allow_zero_forms = true;
      else if (value == "false") problem.allow_zero_forms = false;
      else throw ParseError("allow-zero-forms must be 'true' or 'false'", line_no, value_column);
    }
  }
  if (!have_mode) throw InputError("problem file: missing 'mode:'");
  if (!problem.vars) throw InputError("problem file: missing 'vars:'");
  if (numerator_text.empty()) throw InputError("problem file: missing 'numerator:'");
  if (denominators.empty()) throw InputError("problem file: at least one denominator form is required");

  problem.numerator = parse_polynomial(numerator_text, problem.vars, numerator_line, numerator_column);
  for (std::size_t i = 0; i < denominators.size(); ++i) {
    const auto& d = denominators[i];
    Polynomial form = parse_polynomial(d.text, problem.vars, d.line, d.column);
    const std::string label = "denominator " + std::to_string(i + 1);
    if (form.is_zero()) {
      if (!problem.allow_zero_forms)
        throw ParseError(label + " is zero (set 'allow-zero-forms: true' for decomposition-only inputs)", d.line,
                         d.column);
    } else if (form.total_degree() != 1) {
      throw ParseError(label + " has total degree " + std::to_string(*form.total_degree()) + ", expected 1", d.line,
                       d.column);
    } else if (problem.mode == Mode::kProjective && !is_zero(form.constant_term())) {
      throw ParseError(label + " has a constant term in projective mode", d.line, d.column);
    }
    problem.denominators.push_back(std::move(form));
  }
  if (std::all_of(problem.denominators.begin(), problem.denominators.end(),
                  [](const Polynomial& p) { return p.is_zero(); }))
    throw InputError("problem file: all denominator forms are zero");
  return problem;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ProblemFile load_problem(const std::string& path) {
  try {
    return parse_problem(read_text_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string render_polynomial(const Polynomial& f) { return to_string(f); }

std::string render_problem(const ProblemFile& problem) {
  std::ostringstream os;
  os << "mode: " << to_string(problem.mode) << '\n';
  os << "vars:";
  for (const auto& v : *problem.vars) os << ' ' << v;
  os << '\n';
  if (problem.allow_zero_forms) os << "allow-zero-forms: true\n";
  os << "numerator: " << render_polynomial(problem.numerator) << '\n';
  os << "denominators:\n";
  for (const auto& d : problem.denominators) os << "  " << render_polynomial(d) << '\n';
  return os.str();
}

}  // namespace pfdkit
