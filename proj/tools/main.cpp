#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "groupoid_lab/groupoid_lab.hpp"

namespace gl = groupoid_lab;
using gl::Json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

/// Thrown for usage and input errors that map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_output(const std::string& path, const Json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GROUPOID_LAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("GROUPOID_LAB_SEED is not a number: ") + env);
    }
  }
  return 42;
}

// ---------------------------------------------------------------------------
// validate

std::vector<gl::Violation> morphism_violations(const std::string& name, const gl::Morphism& f) {
  const std::string why = f.violation();
  if (why.empty()) return {};
  return {{"morphism", name + ": " + why}};
}

std::vector<gl::Violation> prefixed(const std::string& where, std::vector<gl::Violation> vs) {
  for (auto& v : vs) v.detail = where + ": " + v.detail;
  return vs;
}

void append(std::vector<gl::Violation>& out, std::vector<gl::Violation> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

std::vector<gl::Violation> functor_violations(const gl::Functor& f) {
  std::vector<gl::Violation> out;
  append(out, prefixed("A", gl::validate_groupoid(f.A)));
  append(out, prefixed("B", gl::validate_groupoid(f.B)));
  if (!out.empty()) return out;
  append(out, morphism_violations("F0", f.F0));
  append(out, morphism_violations("F1", f.F1));
  append(out, gl::validate_functor(f));
  return out;
}

std::vector<gl::Violation> arrow_violations(const gl::ArrowMorphism& m) {
  std::vector<gl::Violation> out;
  append(out, morphism_violations("source", m.source.a));
  append(out, morphism_violations("target", m.target.a));
  append(out, morphism_violations("f", m.f));
  append(out, morphism_violations("f0", m.f0));
  if (out.empty() && !gl::is_commutative(m)) out.push_back({"commutativity", "a.f0 differs from f.b"});
  return out;
}

std::vector<gl::Violation> document_violations(const Json& doc) {
  switch (gl::document_type(doc)) {
    case gl::DocumentType::object: gl::object_from_json(doc); return {};
    case gl::DocumentType::morphism: return morphism_violations("map", gl::morphism_from_json(doc));
    case gl::DocumentType::groupoid: return gl::validate_groupoid(gl::groupoid_from_json(doc));
    case gl::DocumentType::functor: return functor_violations(gl::functor_from_json(doc));
    case gl::DocumentType::nat_transformation: {
      const gl::NatTransformation n = gl::nat_from_json(doc);
      std::vector<gl::Violation> out = prefixed("source", functor_violations(n.source));
      append(out, prefixed("target", functor_violations(n.target)));
      if (!out.empty()) return out;
      append(out, morphism_violations("alpha", n.alpha));
      append(out, gl::validate_nat(n));
      return out;
    }
    case gl::DocumentType::arrow_morphism: return arrow_violations(gl::arrow_morphism_from_json(doc));
    case gl::DocumentType::diagonal: {
      const gl::Diagonal d = gl::diagonal_from_json(doc);
      std::vector<gl::Violation> out = arrow_violations(d.square);
      append(out, morphism_violations("d", d.d));
      if (out.empty() && !gl::is_valid(d)) out.push_back({"diagonal", "a.d differs from f or d.b differs from f0"});
      return out;
    }
  }
  return {};
}

int cmd_validate(const std::string& path) {
  const Json doc = read_document(path);
  std::vector<gl::Violation> vs;
  try {
    vs = document_violations(doc);
  } catch (const gl::StructureError& e) {
    vs.push_back({"structure", e.what()});
  }
  const std::string type = gl::document_type_name(gl::document_type(doc));
  if (vs.empty()) {
    std::cout << "valid " << type << "\n";
    return kOk;
  }
  std::cout << "invalid " << type << "\n";
  for (const auto& v : vs) std::cout << "  " << v.axiom << ": " << v.detail << "\n";
  return kFailure;
}

// ---------------------------------------------------------------------------
// classify

Json sizes_of(const gl::Morphism& f) {
  const std::vector<char> mask = gl::image_mask(f);
  const auto image = std::count(mask.begin(), mask.end(), 1);
  return Json{{"dom", f.dom().size()}, {"cod", f.cod().size()}, {"image", image}};
}

Json classify_functor_report(const gl::Functor& f) {
  const gl::FunctorClassification c = gl::classify_functor(f);
  const gl::FunctorFlags& fl = c.flags;
  Json flags{{"faithful", fl.faithful},
             {"full", fl.full},
             {"fully_faithful", fl.fully_faithful},
             {"essentially_surjective", fl.essentially_surjective},
             {"weak_equivalence", fl.weak_equivalence},
             {"equivalence", fl.equivalence},
             {"fibration", fl.fibration},
             {"split_epi_fibration", fl.split_epi_fibration},
             {"discrete_fibration", fl.discrete_fibration}};
  Json sizes{{"tau_d", sizes_of(c.tau_d)},
             {"tau_c", sizes_of(c.tau_c)},
             {"partial", sizes_of(c.partial)},
             {"essential_witness", sizes_of(c.essential_witness)}};
  Json report{{"kind", "functor"}, {"instance", gl::instance_name(f.A.kind())}, {"fibration_class", std::string(gl::to_string(c.fibration))}};
  if (c.star) {
    flags["star_fibration"] = fl.star_fibration;
    flags["split_epi_star_fibration"] = fl.split_epi_star_fibration;
    sizes["hat_tau_d"] = sizes_of(*c.hat_tau_d);
    sizes["hat_tau_c"] = sizes_of(*c.hat_tau_c);
    report["star_class"] = std::string(gl::to_string(*c.star));
  }
  report["flags"] = std::move(flags);
  report["witness_sizes"] = std::move(sizes);
  if (!fl.fibration) report["witnesses"] = Json{{"tau_d", Json{{"map", c.tau_d.map()}}}};
  return report;
}

Json classify_arrow_report(const gl::ArrowMorphism& m) {
  const gl::ArrowFlags fl = gl::classify_arrow_morphism(m);
  const gl::ArrowComparisonJ j = gl::comparison_J_arr(m);
  Json flags{{"faithful", fl.faithful},
             {"full", fl.full},
             {"fully_faithful", fl.fully_faithful},
             {"essentially_surjective", fl.essentially_surjective},
             {"weak_equivalence", fl.weak_equivalence},
             {"fibration", fl.fibration},
             {"star_fibration", fl.star_fibration}};
  Json sizes{{"partial", sizes_of(gl::partial_arr(m))},
             {"f", sizes_of(m.f)},
             {"J_bottom", sizes_of(j.J.f0)},
             {"h_kernel_partial", sizes_of(j.hkernel.partial())}};
  Json report{{"kind", "arrow"}, {"instance", gl::instance_name(m.f.kind())}, {"flags", std::move(flags)},
              {"witness_sizes", std::move(sizes)}};
  if (!fl.star_fibration) {
    report["witnesses"] = Json{{"J_top", Json{{"map", j.J.f.map()}}}, {"J_bottom", Json{{"map", j.J.f0.map()}}}};
  }
  return report;
}

void print_table(const Json& report) {
  std::cout << report.at("kind").get<std::string>() << " in " << report.at("instance").get<std::string>() << "\n";
  if (report.contains("fibration_class")) std::cout << "  fibration class: " << report.at("fibration_class").get<std::string>() << "\n";
  if (report.contains("star_class")) std::cout << "  star class: " << report.at("star_class").get<std::string>() << "\n";
  std::size_t width = 0;
  for (const auto& [key, value] : report.at("flags").items()) width = std::max(width, key.size());
  for (const auto& [key, value] : report.at("flags").items()) {
    std::cout << "  " << std::left << std::setw(static_cast<int>(width)) << key << "  " << (value.get<bool>() ? "yes" : "no")
              << "\n";
  }
  std::cout << "witness sizes (dom -> cod, image):\n";
  for (const auto& [key, value] : report.at("witness_sizes").items()) {
    std::cout << "  " << key << ": " << value.at("dom") << " -> " << value.at("cod") << ", image " << value.at("image")
              << "\n";
  }
  if (report.contains("witnesses")) {
    for (const auto& [key, value] : report.at("witnesses").items()) {
      std::cout << "  " << key << " map: " << value.at("map").dump() << "\n";
    }
  }
}

int cmd_classify(const std::string& path, std::string kind, const std::string& format) {
  const Json doc = read_document(path);
  const gl::DocumentType type = gl::document_type(doc);
  if (kind.empty()) kind = type == gl::DocumentType::arrow_morphism ? "arrow" : "functor";
  if ((kind == "functor") != (type == gl::DocumentType::functor) ||
      (kind == "arrow") != (type == gl::DocumentType::arrow_morphism)) {
    std::cerr << "error: --kind " << kind << " does not match a " << gl::document_type_name(type) << " document\n";
    return kFailure;
  }
  std::vector<gl::Violation> vs;
  try {
    vs = document_violations(doc);
  } catch (const gl::StructureError& e) {
    vs.push_back({"structure", e.what()});
  }
  if (!vs.empty()) {
    std::cerr << "error: invalid input\n";
    for (const auto& v : vs) std::cerr << "  " << v.axiom << ": " << v.detail << "\n";
    return kFailure;
  }
  Json report;
  try {
    report = kind == "functor" ? classify_functor_report(gl::functor_from_json(doc))
                               : classify_arrow_report(gl::arrow_morphism_from_json(doc));
  } catch (const gl::CapabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  if (format == "table") print_table(report);
  else std::cout << report.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string suite = "all";
  std::string instance = "all";
  int cases = -1;
  std::uint64_t seed = 0;
  std::string out;
  bool timing = false;
  bool inject_fault = false;
};

int cmd_verify(const VerifyOptions& o) {
  std::vector<const gl::SuiteInfo*> suites;
  if (o.suite == "all") {
    for (const auto& s : gl::suite_registry()) suites.push_back(&s);
  } else {
    try {
      suites.push_back(&gl::find_suite(o.suite));
    } catch (const gl::UnknownSuiteError& e) {
      throw UsageError(e.what());
    }
  }
  std::vector<gl::Kind> kinds;
  if (o.instance == "all") {
    kinds = {gl::Kind::FinSet, gl::Kind::FinPtdSet, gl::Kind::FinAb};
  } else {
    try {
      kinds.push_back(gl::parse_instance(o.instance));
    } catch (const gl::ParseError& e) {
      throw UsageError(e.what());
    }
  }
  if (o.cases == 0 || o.cases < -1) throw UsageError("--cases must be positive");
  gl::SuiteOptions options;
  options.inject_fault = o.inject_fault;
  Json reports = Json::array();
  bool all_passed = true;
  int ran = 0;
  for (const auto* s : suites) {
    for (gl::Kind k : kinds) {
      const bool applies = std::find(s->instances.begin(), s->instances.end(), k) != s->instances.end();
      if (!applies && (o.suite == "all" || o.instance == "all")) continue;
      const int cases = o.cases > 0 ? o.cases : s->default_cases;
      const gl::SuiteReport r = gl::run_suite(s->name, k, cases, o.seed, options);
      all_passed = all_passed && r.passed();
      ++ran;
      const char* status = r.skipped ? "SKIP" : (r.passed() ? "PASS" : "FAIL");
      std::cout << status << "  " << s->name << " [" << gl::instance_name(k) << "] cases=" << r.cases;
      if (!r.failures.empty()) std::cout << " failures=" << r.failures.size();
      if (r.expects_witness) std::cout << (r.witness ? " witness=found" : " witness=missing");
      if (o.timing) std::cout << " " << std::fixed << std::setprecision(1) << r.elapsed_ms << "ms";
      std::cout << "\n";
      if (r.skipped) std::cout << "      " << r.skip_reason << "\n";
      for (const auto& f : r.failures) std::cout << "      case " << f.index << ": " << f.message << "\n";
      reports.push_back(gl::to_json(r, o.timing));
    }
  }
  Json doc{{"seed", o.seed}, {"status", all_passed ? "pass" : "fail"}, {"reports", std::move(reports)}};
  if (!o.out.empty()) write_output(o.out, doc);
  std::cout << (all_passed ? "all " : "not all ") << ran << " suite runs met their expectation\n";
  return all_passed ? kOk : kFailure;
}

// ---------------------------------------------------------------------------
// example

const std::vector<std::pair<std::string, std::string>>& example_names() {
  static const std::vector<std::pair<std::string, std::string>> names{
      {"delooping", "one-object groupoid of Z3 in FinAb"},
      {"broken-unit-law", "delooping of Z3 with a constant composition"},
      {"identity-functor", "identity functor on the groupoid of Z2 -> Z4, 1 -> 2"},
      {"object-embedding", "embedding of the objects into the delooping of Z2"},
      {"fold-square", "square (id, fold) of pointed sets, a fibration that is not a *-fibration"},
      {"star-not-fibration", "smallest *-fibration that is not a fibration found in FinAb"},
  };
  return names;
}

Json example_document(const std::string& name) {
  if (name == "delooping") return gl::tagged(gl::DocumentType::groupoid, gl::delooping(gl::cyclic_group(3)));
  if (name == "broken-unit-law") {
    gl::Groupoid g = gl::delooping(gl::cyclic_group(3));
    g.m = gl::Morphism::unchecked(g.m.dom(), g.B1, std::vector<int>(static_cast<std::size_t>(g.m.dom().size()), 0));
    return gl::tagged(gl::DocumentType::groupoid, g);
  }
  if (name == "identity-functor") {
    const gl::Morphism delta = gl::Morphism::make(gl::cyclic_group(2), gl::cyclic_group(4), {0, 2});
    return gl::tagged(gl::DocumentType::functor, gl::identity_functor(gl::groupoid_from_arrow(delta)));
  }
  if (name == "object-embedding") {
    return gl::tagged(gl::DocumentType::functor, gl::discrete_embedding(gl::delooping(gl::cyclic_group(2))));
  }
  if (name == "fold-square") return gl::tagged(gl::DocumentType::arrow_morphism, gl::detail::fold_square());
  if (name == "star-not-fibration") {
    const gl::SuiteReport r = gl::run_suite("star-not-fibration", gl::Kind::FinAb, 1, 0);
    if (!r.witness) throw std::runtime_error("search found no witness");
    Json j = *r.witness;
    j["type"] = "functor";
    return j;
  }
  std::string known;
  for (const auto& [n, d] : example_names()) known += " " + n;
  throw UsageError("unknown example '" + name + "'; known:" + known);
}

int cmd_example(const std::string& name, const std::string& out, bool list) {
  if (list || name.empty()) {
    for (const auto& [n, d] : example_names()) std::cout << std::left << std::setw(20) << n << d << "\n";
    return kOk;
  }
  write_output(out, example_document(name));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Internal groupoids over finite sets, pointed sets and abelian groups"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a JSON document against its axioms");
  validate->add_option("path", validate_path, "JSON file")->required();

  std::string classify_path;
  std::string classify_kind;
  std::string format = "json";
  auto* classify = app.add_subcommand("classify", "print the classification flags of a functor or square");
  classify->add_option("path", classify_path, "JSON file")->required();
  classify->add_option("--kind", classify_kind, "functor or arrow")->check(CLI::IsMember({"functor", "arrow"}));
  classify->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));

  VerifyOptions vo;
  bool list_suites = false;
  auto* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--suite", vo.suite, "suite name or 'all'");
  verify->add_option("--instance", vo.instance, "finset, finptdset, finab or 'all'");
  verify->add_option("--cases", vo.cases, "cases per suite (default: the suite's own)");
  auto* seed_opt = verify->add_option("--seed", vo.seed, "seed (default: $GROUPOID_LAB_SEED or 42)");
  verify->add_option("--out", vo.out, "write the JSON report here");
  verify->add_flag("--timing", vo.timing, "include elapsed time");
  verify->add_flag("--inject-fault", vo.inject_fault, "run suites against a deliberately broken classifier");
  verify->add_flag("--list", list_suites, "list registered suites");

  std::string example_name;
  std::string example_out;
  bool list_examples = false;
  auto* example = app.add_subcommand("example", "write a sample document");
  example->add_option("name", example_name, "example name");
  example->add_option("--out", example_out, "output file (default: stdout)");
  example->add_flag("--list", list_examples, "list examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(validate_path);
    if (*classify) return cmd_classify(classify_path, classify_kind, format);
    if (*verify) {
      if (list_suites) {
        for (const auto& s : gl::suite_registry()) std::cout << std::left << std::setw(32) << s.name << s.description << "\n";
        return kOk;
      }
      if (seed_opt->count() == 0) vo.seed = default_seed();
      return cmd_verify(vo);
    }
    if (*example) return cmd_example(example_name, example_out, list_examples);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const gl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
