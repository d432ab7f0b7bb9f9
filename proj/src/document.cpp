#include "pfdkit/document.hpp"

#include <sstream>

#include "json.hpp"
#include "pfdkit/error.hpp"

namespace pfdkit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Mode parse_mode(const std::string& s, int line) {
  if (s == "affine") return Mode::kAffine;
  if (s == "projective") return Mode::kProjective;
  throw ParseError("mode must be 'affine' or 'projective'", line, 1);
}

int parse_int(const std::string& s, const std::string& what, int line) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw ParseError(what + " must be an integer", line, 1);
  return v;
}

std::vector<std::size_t> parse_indices(const std::string& s, int line) {
  std::istringstream in(s);
  std::vector<std::size_t> out;
  std::string tok;
  while (in >> tok) out.push_back(static_cast<std::size_t>(parse_int(tok, "denominator index", line)) - 1);
  for (const auto& i : out)
    if (i == static_cast<std::size_t>(-1)) throw ParseError("denominator indices are 1-based", line, 1);
  return out;
}

VarList parse_var_names(const std::vector<std::string>& names, int line) {
  for (const auto& v : names)
    if (!is_identifier(v)) throw ParseError("bad variable name '" + v + "'", line, 1);
  return make_vars(names);
}

PfdDocument parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("JSON: ") + e.what());
  }
  try {
    if (j.at("format") != "pfd-document" || j.at("version") != 1) throw InputError("not a pfd-document v1");
    PfdDocument doc;
    doc.mode = parse_mode(j.at("mode").get<std::string>(), 1);
    doc.vars = parse_var_names(j.at("vars").get<std::vector<std::string>>(), 1);
    doc.result.degree = j.at("degree").get<int>();
    doc.result.method = parse_method(j.at("method").get<std::string>());
    doc.result.status = parse_status(j.at("status").get<std::string>());
    for (const auto& t : j.at("terms")) {
      PfdTerm term;
      term.numerator = parse_polynomial(t.at("numerator").get<std::string>(), doc.vars);
      for (int i : t.at("denominator").get<std::vector<int>>()) {
        if (i < 1) throw InputError("denominator indices are 1-based");
        term.denominator.push_back(static_cast<std::size_t>(i - 1));
      }
      doc.denominators.push_back(parse_polynomial(t.at("forms").get<std::string>(), doc.vars));
      doc.result.terms.push_back(std::move(term));
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("JSON: ") + e.what());
  }
}

PfdDocument parse_text(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool header = false;
  std::optional<int> declared_terms;
  PfdDocument doc;
  bool have_mode = false, have_degree = false, have_method = false, have_status = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "pfd-document v1") throw ParseError("expected 'pfd-document v1'", lineno, 1);
      header = true;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", lineno, 1);
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (key == "mode") {
      doc.mode = parse_mode(value, lineno);
      have_mode = true;
    } else if (key == "vars") {
      std::istringstream vs(value);
      std::vector<std::string> names;
      for (std::string v; vs >> v;) names.push_back(v);
      doc.vars = parse_var_names(names, lineno);
    } else if (key == "degree") {
      doc.result.degree = parse_int(value, "degree", lineno);
      have_degree = true;
    } else if (key == "method") {
      doc.result.method = parse_method(value);
      have_method = true;
    } else if (key == "status") {
      doc.result.status = parse_status(value);
      have_status = true;
    } else if (key == "terms") {
      declared_terms = parse_int(value, "terms", lineno);
    } else if (key == "term") {
      if (!doc.vars) throw ParseError("'vars' must precede the terms", lineno, 1);
      const std::string body = raw.substr(raw.find(':') + 1);
      const auto bar1 = body.find('|');
      const auto bar2 = bar1 == std::string::npos ? bar1 : body.find('|', bar1 + 1);
      if (bar2 == std::string::npos) throw ParseError("term needs 'numerator | indices | forms'", lineno, 1);
      const int col = static_cast<int>(raw.find(':')) + 2;
      PfdTerm term;
      term.numerator = parse_polynomial(body.substr(0, bar1), doc.vars, lineno, col);
      term.denominator = parse_indices(body.substr(bar1 + 1, bar2 - bar1 - 1), lineno);
      doc.denominators.push_back(
          parse_polynomial(body.substr(bar2 + 1), doc.vars, lineno, col + static_cast<int>(bar2) + 1));
      doc.result.terms.push_back(std::move(term));
    } else {
      throw ParseError("unknown key '" + key + "'", lineno, 1);
    }
  }
  if (!header) throw InputError("empty PFD document");
  if (!doc.vars || !have_mode || !have_degree || !have_method || !have_status || !declared_terms)
    throw InputError("PFD document lacks one of mode, vars, degree, method, status, terms");
  if (static_cast<std::size_t>(*declared_terms) != doc.result.terms.size())
    throw InputError("PFD document declares " + std::to_string(*declared_terms) + " terms but lists " +
                     std::to_string(doc.result.terms.size()));
  return doc;
}

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += " ";
    out += std::to_string(v[k] + 1);
  }
  return out;
}

}  // namespace

std::string render_denominator(const RationalFunction& rf, const std::vector<std::size_t>& indices) {
  if (indices.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k) out += "*";
    out += "(" + render_polynomial(rf.form(indices[k])) + ")";
  }
  return out;
}

std::string render_pfd_text(const PfdResult& result, const RationalFunction& rf) {
  std::string out = "pfd-document v1\n";
  out += "mode: " + std::string(to_string(rf.mode())) + "\n";
  out += "vars:";
  for (const auto& v : *rf.vars()) out += " " + v;
  out += "\n";
  out += "degree: " + std::to_string(result.degree) + "\n";
  out += "method: " + to_string(result.method) + "\n";
  out += "status: " + to_string(result.status) + "\n";
  out += "terms: " + std::to_string(result.terms.size()) + "\n";
  for (const auto& t : result.terms)
    out += "term: " + render_polynomial(t.numerator) + " | " + join_indices(t.denominator) + " | " +
           render_denominator(rf, t.denominator) + "\n";
  return out;
}

std::string render_pfd_json(const PfdResult& result, const RationalFunction& rf) {
  nlohmann::ordered_json j;
  j["format"] = "pfd-document";
  j["version"] = 1;
  j["mode"] = std::string(to_string(rf.mode()));
  j["vars"] = *rf.vars();
  j["degree"] = result.degree;
  j["method"] = to_string(result.method);
  j["status"] = to_string(result.status);
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : result.terms) {
    std::vector<std::size_t> one_based;
    for (auto i : t.denominator) one_based.push_back(i + 1);
    j["terms"].push_back({{"numerator", render_polynomial(t.numerator)},
                          {"denominator", one_based},
                          {"forms", render_denominator(rf, t.denominator)}});
  }
  return j.dump(2) + "\n";
}

PfdDocument parse_pfd_document(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json(text);
  return parse_text(text);
}

PfdDocument load_pfd_document(const std::string& path) { return parse_pfd_document(read_text_file(path)); }

PfdCheck check_document(const PfdDocument& doc, const RationalFunction& rf) {
  if (!same_ring(doc.vars, rf.vars())) return {false, "document variables differ from the problem's"};
  if (doc.mode != rf.mode()) return {false, "document mode differs from the problem's"};
  for (std::size_t k = 0; k < doc.result.terms.size(); ++k) {
    const auto& idx = doc.result.terms[k].denominator;
    Polynomial product = Polynomial::constant(rf.vars(), 1);
    for (auto i : idx) {
      if (i >= rf.size()) return {false, "term " + std::to_string(k + 1) + ": denominator index outside the input forms"};
      product *= rf.form(i);
    }
    if (product != doc.denominators[k])
      return {false, "term " + std::to_string(k + 1) + ": printed denominator does not match its indices"};
  }
  return check_pfd(doc.result, rf);
}

}  // namespace pfdkit
