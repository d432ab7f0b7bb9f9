#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "pfdkit/decomp.hpp"
#include "pfdkit/document.hpp"
#include "pfdkit/error.hpp"
#include "pfdkit/pfd.hpp"
#include "pfdkit/synthetic.hpp"

namespace pfdkit::cli {

namespace {

std::string join_one_based(const std::vector<std::size_t>& v, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += sep;
    out += std::to_string(v[k] + 1);
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
  if (!f) throw InputError("error writing '" + path + "'");
}

RationalFunction load_function(const std::string& path) {
  const ProblemFile p = load_problem(path);
  if (p.numerator.is_zero()) throw InputError(path + ": the numerator is zero");
  if (p.allow_zero_forms) throw InputError(path + ": zero denominator forms are only allowed for decompositions");
  return RationalFunction::from_problem(p);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// ---- reduce ----------------------------------------------------------------

int cmd_reduce(const std::string& file, std::ostream& out) {
  const ProblemFile p = load_problem(file);
  const RationalFunction rf = load_function(file);
  const ReducedExpression red = reduced_exp(rf);
  if (red.removed.empty()) {
    out << "# no factors removed\n";
  } else {
    out << "# removed factors:";
    for (auto i : red.removed) out << " " << i + 1 << " (" << render_polynomial(rf.form(i)) << ")";
    out << "\n";
  }
  ProblemFile reduced = p;
  reduced.numerator = red.function.numerator();
  reduced.denominators = red.function.forms();
  out << render_problem(reduced);
  return kOk;
}

// ---- pfd -------------------------------------------------------------------

struct PfdArgs {
  std::string file;
  std::optional<int> degree;
  std::optional<int> max_degree;
  std::string method = "auto";
  std::string restrict_file;
  int iterative = 0;
  std::string format = "text";
  std::string output;
  std::string json_output;
  std::size_t max_generators = 200000;
  std::size_t max_pairs = 0;
};

// Decomposition of the original function, or nullopt with a message.
std::optional<PfdResult> decompose(const RationalFunction& rf, const PfdArgs& a, std::string& why) {
  const std::size_t n = rf.size();
  if (a.degree && (*a.degree < 1 || static_cast<std::size_t>(*a.degree) > n))
    throw DomainError("--degree " + std::to_string(*a.degree) + " outside [1, " + std::to_string(n) + "]");
  const ReducedExpression red = reduced_exp(rf);
  const int removed = static_cast<int>(red.removed.size());

  PfdOptions o;
  o.method = parse_method_choice(a.method);
  o.iterative_step = a.iterative;
  o.max_generators = a.max_generators;
  o.max_pairs = a.max_pairs;
  if (!a.restrict_file.empty()) o.restriction = parse_restriction(read_text_file(a.restrict_file), n).restricted_to(red.kept);

  // The reduced expression itself is a one-term decomposition of degree `removed`.
  PfdResult trivial;
  trivial.degree = removed;
  trivial.terms = {{red.function.numerator(), red.kept}};
  trivial.method = PfdMethod::kLinear;

  std::optional<PfdResult> sub;
  if (a.degree) {
    const int d = *a.degree - removed;
    if (d <= 0) {
      trivial.degree = *a.degree;
      trivial.status = PfdStatus::kFixedDegree;
      return trivial;
    }
    o.degree = d;
  } else if (a.max_degree) {
    o.max_degree = *a.max_degree - removed;
  }
  const bool capped_out = o.max_degree && *o.max_degree <= 0;
  if (red.function.size() > 0 && !capped_out) sub = pfd(red.function, o);
  if (sub) return remap(std::move(*sub), red.kept, n);

  if (a.degree) {
    why = o.restriction ? "no PFD of degree " + std::to_string(*a.degree) +
                              " with the restricted generators (inconclusive)"
                        : "no PFD of degree " + std::to_string(*a.degree);
    return std::nullopt;
  }
  if (removed > 0) {
    trivial.status = o.restriction ? PfdStatus::kLowerBound : (capped_out ? PfdStatus::kCapped : PfdStatus::kMaximal);
    return trivial;
  }
  why = o.restriction ? "no PFD found with the restricted generators (inconclusive)" : "no PFD of any degree";
  return std::nullopt;
}

int cmd_pfd(const PfdArgs& a, std::ostream& out, std::ostream& err) {
  if (a.format != "text" && a.format != "json") throw InputError("--format must be text or json");
  const RationalFunction rf = load_function(a.file);
  const ReducedExpression red = reduced_exp(rf);
  if (!red.removed.empty()) err << "reduced: removed factors " << join_one_based(red.removed, " ") << "\n";
  std::string why;
  const auto result = decompose(rf, a, why);
  if (!result) {
    out << why << "\n";
    return kNegative;
  }
  const std::string text = render_pfd_text(*result, rf);
  const std::string json = render_pfd_json(*result, rf);
  const std::string& doc = a.format == "json" ? json : text;
  if (!a.output.empty())
    write_file(a.output, doc);
  else
    out << doc;
  if (!a.json_output.empty()) write_file(a.json_output, json);
  return kOk;
}

// ---- decompose ---------------------------------------------------------------

int cmd_decompose(const std::string& file, int d, bool minimal, bool verify, bool csv, std::size_t max_components,
                  std::ostream& out) {
  const ProblemFile p = load_problem(file);
  const Arrangement arr(p.vars, p.denominators, p.mode, p.allow_zero_forms);
  auto components = primary_decomposition(arr, d);
  DecompositionOptions opts;
  opts.max_components = max_components;
  if (minimal) components = minimal_decomposition(arr, d, std::move(components), opts);
  if (csv) {
    out << "flat,forms,exponent\n";
    for (const auto& c : components) {
      std::string forms;
      for (auto i : c.flat.indices) {
        if (arr.form(i).is_zero()) continue;
        if (!forms.empty()) forms += "; ";
        forms += render_polynomial(arr.form(i));
      }
      out << csv_quote(join_one_based(c.flat.indices, " ")) << "," << csv_quote(forms) << "," << c.exponent << "\n";
    }
  } else {
    out << "decomposition: " << to_string(p.mode) << ", n = " << arr.size() << ", d = " << d
        << (minimal ? ", minimal" : "") << ", components: " << components.size() << "\n";
    if (components.empty()) out << "no components: I_{L," << d << "} is the unit ideal\n";
    for (const auto& c : components) out << render_component(arr, c) << "\n";
  }
  if (verify) {
    if (!verify_decomposition(arr, d, components, opts)) {
      out << "NOT verified: the intersection differs from I_{L," << d << "}\n";
      return kNegative;
    }
    out << "verified: the intersection equals I_{L," << d << "}\n";
  }
  return kOk;
}

// ---- flats -----------------------------------------------------------------

int cmd_flats(const std::string& file, std::size_t min_size, bool list, bool csv, std::ostream& out) {
  const ProblemFile p = load_problem(file);
  const Arrangement arr(p.vars, p.denominators, p.mode, p.allow_zero_forms);
  const auto flats = flats_min_size(arr, min_size);
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& f : flats) histogram[f.size()]++;
  if (csv) {
    out << "size,count\n";
    for (const auto& [size, count] : histogram) out << size << "," << count << "\n";
    if (list) {
      out << "flat\n";
      for (const auto& f : flats) out << csv_quote(join_one_based(f.indices, " ")) << "\n";
    }
    return kOk;
  }
  out << "flats with at least " << min_size << " elements: " << flats.size() << "\n";
  for (const auto& [size, count] : histogram) out << "size " << size << ": " << count << "\n";
  const auto ground = std::count_if(flats.begin(), flats.end(), [&](const FlatSet& f) { return f.mask == arr.ground_set(); });
  out << "proper flats: " << flats.size() - static_cast<std::size_t>(ground) << "\n";
  if (list)
    for (const auto& f : flats) out << "{" << join_one_based(f.indices, ",") << "}\n";
  return kOk;
}

// ---- braid -----------------------------------------------------------------

int cmd_braid(int r, std::optional<int> d, std::ostream& out) {
  const Arrangement b = braid_arrangement(r);
  out << "braid arrangement B_" << r << ": " << b.size() << " forms, rank " << b.rank() << "\n";
  const auto flats = flats_min_size(b, 0);
  std::map<Partition, std::size_t> count;
  for (const auto& f : flats) count[braid_flat_type(r, f.mask)]++;
  out << "flats: " << flats.size() << "\n";
  for (const auto& lambda : partitions_of(r))
    out << "type " << lambda.to_string() << ": size " << partition_flat_size(lambda) << ", count " << count[lambda]
        << "\n";
  if (d) {
    const auto components = primary_decomposition_projective(b, *d);
    std::map<Partition, std::pair<std::size_t, int>> census;
    for (const auto& c : components) {
      auto& e = census[braid_flat_type(r, c.flat.mask)];
      e.first++;
      e.second = c.exponent;
    }
    out << "decomposition at d = " << *d << ": " << components.size() << " components\n";
    for (const auto& lambda : partitions_of(r)) {
      auto it = census.find(lambda);
      if (it == census.end()) continue;
      out << "type " << lambda.to_string() << ": count " << it->second.first << ", exponent " << it->second.second
          << "\n";
    }
  }
  return kOk;
}

// ---- check -----------------------------------------------------------------

int cmd_check(const std::string& file, int d, const std::string& method, std::ostream& out) {
  const RationalFunction rf = load_function(file);
  const CheckMethod m = parse_check_method(method);
  if (m == CheckMethod::kFlats) {
    if (d < 1 || static_cast<std::size_t>(d) > rf.size())
      throw DomainError("degree " + std::to_string(d) + " outside [1, " + std::to_string(rf.size()) + "]");
    const FlatsVerdict v = exists_pfd_via_flats(rf.numerator(), rf.arrangement(), d);
    if (v.holds) {
      out << "yes\n";
      return kOk;
    }
    out << "no\n";
    if (v.witness)
      out << "witness flat {" << join_one_based(v.witness->indices, ",") << "}" << (v.at_infinity ? " (at infinity)" : "")
          << ": vanishing order " << v.order << ", required " << v.required << "\n";
    return kNegative;
  }
  const bool yes = pfd_exists(rf, d, m);
  out << (yes ? "yes" : "no") << "\n";
  return yes ? kOk : kNegative;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const std::string& doc_file, const std::string& problem_file, std::ostream& out) {
  const RationalFunction rf = load_function(problem_file);
  const PfdDocument doc = load_pfd_document(doc_file);
  const PfdCheck c = check_document(doc, rf);
  if (c.valid) {
    out << "valid\n";
    return kOk;
  }
  out << "invalid: " << c.reason << "\n";
  return kNegative;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string suite;
  std::uint64_t seed = 1;
  int samples = 2;
  std::string fixtures = PFDKIT_FIXTURE_DIR;
};

struct Sample {
  RationalFunction rf;
  std::optional<int> degree;  // fixed degree (restricted runs)
  std::optional<GeneratorRestriction> restriction;
  MethodChoice method = MethodChoice::kAuto;
};

int run_sample(const Sample& s, int index, std::ostream& out) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  const ReducedExpression red = reduced_exp(s.rf);
  const double t_reduce = seconds_since(t0);
  PfdOptions o;
  o.method = s.method;
  int d = 0;
  double t_search = 0;
  if (s.degree) {
    d = *s.degree - static_cast<int>(red.removed.size());
    if (s.restriction) o.restriction = s.restriction->restricted_to(red.kept);
  } else {
    t0 = clock::now();
    const Arrangement a = red.function.arrangement();
    for (std::size_t k = 1; k <= red.function.size(); ++k) {
      if (!exists_pfd_via_flats(red.function.numerator(), a, static_cast<int>(k)).holds) break;
      d = static_cast<int>(k);
    }
    t_search = seconds_since(t0);
  }
  out << "sample " << index << ": numerator terms " << s.rf.numerator().size() << ", degree "
      << *s.rf.numerator().total_degree() << ", removed " << red.removed.size();
  if (d < 1) {
    out << ", no PFD\n";
    return kNegative;
  }
  o.degree = d;
  t0 = clock::now();
  const auto r = pfd(red.function, o);
  const double t_extract = seconds_since(t0);
  if (!r) {
    out << ", extraction failed at degree " << d << "\n";
    return kNegative;
  }
  const PfdResult full = remap(*r, red.kept, s.rf.size());
  t0 = clock::now();
  const bool ok = verify_pfd(full, s.rf);
  const double t_verify = seconds_since(t0);
  out << ", PFD degree " << full.degree << " (" << to_string(full.method) << ", " << to_string(full.status) << "), "
      << full.terms.size() << " terms; reduce " << fixed(t_reduce) << " s, search " << fixed(t_search)
      << " s, extract " << fixed(t_extract) << " s, verify " << fixed(t_verify) << " s, " << (ok ? "valid" : "INVALID")
      << "\n";
  return ok ? kOk : kNegative;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  auto fixture = [&](const std::string& name) { return load_problem(a.fixtures + "/" + name); };
  std::mt19937_64 rng(a.seed);
  std::vector<Sample> samples;
  if (a.suite == "intro" || a.suite == "wavefunction") {
    const ProblemFile p = fixture(a.suite + ".problem");
    samples.push_back({RationalFunction::from_problem(p), std::nullopt, std::nullopt,
                       a.suite == "wavefunction" ? MethodChoice::kLinear : MethodChoice::kAuto});
  } else if (a.suite == "feynman12") {
    // Degree-11 numerators inside I_{L,8}.
    const ProblemFile p = fixture("feynman12.problem");
    const Arrangement arr(p.vars, p.denominators, p.mode);
    for (int k = 0; k < a.samples; ++k)
      samples.push_back({RationalFunction(synthetic_member(arr, SyntheticSpec{8, 3, 40, std::nullopt}, rng),
                                          p.denominators, p.mode),
                         std::nullopt, std::nullopt, MethodChoice::kAuto});
  } else if (a.suite == "feynman29") {
    // Generators from forms 1..21 only, degree 4: 5985 products.
    const ProblemFile p = fixture("feynman29.problem");
    const Arrangement arr(p.vars, p.denominators, p.mode);
    GeneratorRestriction r;
    r.exclude = {21, 22, 23, 24, 25, 26, 27, 28};
    const auto masks = r.masks(arr.size(), 4, 1000000);
    out << "restricted generators: " << masks.size() << "\n";
    for (int k = 0; k < a.samples; ++k)
      samples.push_back({RationalFunction(synthetic_member(arr, SyntheticSpec{4, 2, 30, masks}, rng), p.denominators,
                                          p.mode),
                         4, r, MethodChoice::kGroebner});
  } else {
    throw InputError("unknown suite '" + a.suite + "' (intro, wavefunction, feynman12, feynman29)");
  }
  out << "suite " << a.suite << ", seed " << a.seed << ", " << samples.size() << " sample(s)\n";
  int code = kOk;
  for (std::size_t k = 0; k < samples.size(); ++k)
    if (run_sample(samples[k], static_cast<int>(k + 1), out) != kOk) code = kNegative;
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact multivariate partial fraction decomposition over hyperplane arrangements", "pfdkit"};
  app.require_subcommand(1);

  std::string file, doc_file;
  auto* reduce = app.add_subcommand("reduce", "Remove spurious denominator factors");
  reduce->add_option("file", file, "problem file")->required();

  PfdArgs pa;
  auto* pfd_cmd = app.add_subcommand("pfd", "Maximal-degree partial fraction decomposition");
  pfd_cmd->add_option("file", pa.file, "problem file")->required();
  pfd_cmd->add_option("--degree", pa.degree, "decompose at this degree only");
  pfd_cmd->add_option("--max-degree", pa.max_degree, "upper limit for the degree search");
  pfd_cmd->add_option("--method", pa.method, "gb, linear or auto")->check(CLI::IsMember({"gb", "linear", "auto"}));
  pfd_cmd->add_option("--restrict-generators", pa.restrict_file, "index-subset file (allow:/subset:/exclude: lines)");
  pfd_cmd->add_option("--iterative", pa.iterative, "refine term by term with this degree step");
  pfd_cmd->add_option("--format", pa.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  pfd_cmd->add_option("-o,--output", pa.output, "write the document here instead of stdout");
  pfd_cmd->add_option("--json-out", pa.json_output, "also write the JSON mirror here");
  pfd_cmd->add_option("--max-generators", pa.max_generators, "generator cap");
  pfd_cmd->add_option("--max-pairs", pa.max_pairs, "Groebner pair cap (0: none)");

  int d = 1;
  bool minimal = false, verify = false, csv = false, list = false;
  std::size_t max_components = 64;
  auto* decompose_cmd = app.add_subcommand("decompose", "Primary decomposition of I_{L,d} from flats");
  decompose_cmd->add_option("file", file, "problem file")->required();
  decompose_cmd->add_option("--d", d, "degree d")->required();
  decompose_cmd->add_flag("--minimal", minimal, "drop redundant components");
  decompose_cmd->add_flag("--verify", verify, "check the intersection against I_{L,d}");
  decompose_cmd->add_flag("--csv", csv, "CSV report");
  decompose_cmd->add_option("--max-components", max_components, "component cap for --minimal and --verify");

  std::size_t min_size = 0;
  auto* flats_cmd = app.add_subcommand("flats", "Flats of the arrangement's matroid");
  flats_cmd->add_option("file", file, "problem file")->required();
  flats_cmd->add_option("--min-size", min_size, "smallest flat size reported");
  flats_cmd->add_flag("--list", list, "list every flat");
  flats_cmd->add_flag("--csv", csv, "CSV report");

  int r = 3;
  std::optional<int> braid_d;
  auto* braid_cmd = app.add_subcommand("braid", "Flats and decomposition of the braid arrangement");
  braid_cmd->add_option("--r", r, "number of variables")->required();
  braid_cmd->add_option("--d", braid_d, "also decompose I_{L,d}");

  std::string check_method = "flats";
  auto* check_cmd = app.add_subcommand("check", "Does a PFD of the given degree exist?");
  check_cmd->add_option("file", file, "problem file")->required();
  check_cmd->add_option("--degree", d, "degree d")->required();
  check_cmd->add_option("--method", check_method, "flats, gb or linear")
      ->check(CLI::IsMember({"flats", "gb", "linear"}));

  auto* verify_cmd = app.add_subcommand("verify", "Check a PFD document against a problem");
  verify_cmd->add_option("document", doc_file, "PFD document (text or JSON)")->required();
  verify_cmd->add_option("problem", file, "problem file")->required();

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Timed runs on synthetic numerators");
  bench_cmd->add_option("suite", ba.suite, "intro, wavefunction, feynman12 or feynman29")->required();
  bench_cmd->add_option("--seed", ba.seed, "random seed");
  bench_cmd->add_option("--samples", ba.samples, "synthetic samples per suite");
  bench_cmd->add_option("--fixtures", ba.fixtures, "fixture directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*reduce) return cmd_reduce(file, out);
    if (*pfd_cmd) return cmd_pfd(pa, out, err);
    if (*decompose_cmd) return cmd_decompose(file, d, minimal, verify, csv, max_components, out);
    if (*flats_cmd) return cmd_flats(file, min_size, list, csv, out);
    if (*braid_cmd) return cmd_braid(r, braid_d, out);
    if (*check_cmd) return cmd_check(file, d, check_method, out);
    if (*verify_cmd) return cmd_verify(doc_file, file, out);
    if (*bench_cmd) return cmd_bench(ba, out);
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n"
        << "hint: restrict the generator set with --restrict-generators or lower the degree\n";
    return kResourceAbort;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::bad_alloc&) {
    err << "resource limit: out of memory\n";
    return kResourceAbort;
  }
  return kInputError;
}

}  // namespace pfdkit::cli
