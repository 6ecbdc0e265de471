#include "matinv2/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "matinv2/selftest.hpp"
#include "matinv2/tuple_io.hpp"

namespace matinv2 {
namespace {

Catalog catalog_for(const std::string& set, int d, const FieldSpec& field) {
  if (set == "S") return separating_set(d);
  if (set == "G") return generating_set(d, field.characteristic());
  if (set == "Z") return zero_separating_set(d);
  throw Error(ErrorKind::kParse, "unknown set '" + set + "'");
}

struct InvariantsArgs {
  std::string input;
  std::string tuple;
  std::string set = "S";
};

int cmd_invariants(const InvariantsArgs& a, std::ostream& out) {
  const TupleDocument doc = load_tuple_document(a.input);
  const MatrixTuple& u = doc.tuple(a.tuple);
  const Fingerprint fp = fingerprint(u, catalog_for(a.set, doc.d, doc.field));
  for (std::size_t i = 0; i < fp.descriptors.size(); ++i) {
    out << fp.descriptors[i].to_string() << " = " << fp.values[i].to_string() << "\n";
  }
  return kExitOk;
}

struct SeparateArgs {
  std::string input;
  std::string left = "u";
  std::string right = "v";
  std::string set = "S";
  std::string report = "text";
};

nlohmann::ordered_json fingerprint_json(const Fingerprint& fp) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < fp.descriptors.size(); ++i) j[fp.descriptors[i].to_string()] = fp.values[i].to_string();
  return j;
}

int cmd_separate(const SeparateArgs& a, std::ostream& out) {
  const TupleDocument doc = load_tuple_document(a.input);
  const MatrixTuple& u = doc.tuple(a.left);
  const MatrixTuple& v = doc.tuple(a.right);
  const Catalog set = catalog_for(a.set, doc.d, doc.field);
  const SeparationVerdict verdict = separated_by(u, v, set);
  if (a.report == "json") {
    nlohmann::ordered_json j;
    j["set"] = a.set;
    j["field"] = to_string(doc.field);
    j["d"] = doc.d;
    j["separated"] = verdict.separated;
    j["witness"] = verdict.witness ? nlohmann::ordered_json(verdict.witness->to_string()) : nlohmann::ordered_json();
    j["fingerprints"][a.left] = fingerprint_json(fingerprint(u, set));
    j["fingerprints"][a.right] = fingerprint_json(fingerprint(v, set));
    out << j.dump(2) << "\n";
  } else if (verdict.separated) {
    out << "SEPARATED by " << verdict.witness->to_string() << "\n";
  } else {
    out << "NOT-SEPARATED\n";
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string case_id;
  std::string ring;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const std::vector<CaseSpec> suite = builtin_case_suite();
  std::optional<CoefficientRing> ring;
  if (!a.ring.empty()) {
    if (a.ring != "Z" && a.ring != "F2") throw Error(ErrorKind::kParse, "--ring takes Z or F2");
    ring = parse_ring(a.ring);
  }
  std::vector<const CaseSpec*> selected;
  if (!a.case_id.empty()) {
    selected.push_back(&find_case(suite, a.case_id));
  } else {
    for (const auto& c : suite) selected.push_back(&c);
  }
  std::size_t passed = 0;
  for (const CaseSpec* c : selected) {
    const CertificateReport r = verify_case(*c, ring);
    out << (r.passed ? "PASS " : "FAIL ") << r.id << " [" << to_string(r.ring) << "]";
    if (!r.passed) out << " residue: " << r.residue.to_string();
    out << "\n";
    passed += r.passed ? 1 : 0;
  }
  out << passed << "/" << selected.size() << " cases passed\n";
  return passed == selected.size() ? kExitOk : kExitFail;
}

struct WitnessArgs {
  int d = 0;
  std::string invariant;
  std::string field = "Q";
};

int cmd_witness(const WitnessArgs& a, std::ostream& out) {
  const FieldSpec spec = parse_field_spec(a.field);
  const WitnessPair w = witness_for(parse_descriptor(a.invariant), a.d, Field(spec));
  TupleDocument doc;
  doc.field = spec;
  doc.d = a.d;
  doc.tuples.emplace("u", w.u);
  doc.tuples.emplace("v", w.v);
  doc.distinguishing = w.distinguishing;
  out << to_json(doc);
  return kExitOk;
}

struct SelftestArgs {
  std::uint64_t seed = 1;
  std::size_t iters = 100;
  int d = 0;
  std::string field;
};

int cmd_selftest(const SelftestArgs& a, std::ostream& out) {
  SelftestOptions opt;
  opt.seed = a.seed;
  opt.iters = a.iters;
  if (a.d != 0) opt.d = a.d;
  if (!a.field.empty()) opt.field = parse_field_spec(a.field);
  if (opt.d && (*opt.d < 1 || (opt.field && opt.field->characteristic() == 2 && *opt.d > kMaxCharTwoOracleDegree))) {
    throw Error(ErrorKind::kParse, "--d out of range");
  }
  std::size_t failures = 0;
  for (const SuiteLine& line : run_selftest(opt, builtin_case_suite())) {
    out << line.to_string() << "\n";
    failures += line.counterexamples;
  }
  out << (failures == 0 ? "selftest PASS" : "selftest FAIL") << "\n";
  return failures == 0 ? kExitOk : kExitFail;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conjugation invariants of tuples of 2x2 matrices", "matinv2"};
  app.require_subcommand(1);

  InvariantsArgs inv;
  auto* invariants = app.add_subcommand("invariants", "Evaluate an invariant catalog on a tuple");
  invariants->add_option("--input", inv.input, "TupleDocument JSON")->required();
  invariants->add_option("--tuple", inv.tuple, "Tuple name")->required();
  invariants->add_option("--set", inv.set)->check(CLI::IsMember({"S", "G", "Z"}));

  SeparateArgs sep;
  auto* separate = app.add_subcommand("separate", "Decide whether a catalog separates two tuples");
  separate->add_option("--input", sep.input, "TupleDocument JSON")->required();
  separate->add_option("--left", sep.left);
  separate->add_option("--right", sep.right);
  separate->add_option("--set", sep.set)->check(CLI::IsMember({"S", "G"}));
  separate->add_option("--report", sep.report)->check(CLI::IsMember({"text", "json"}));

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify-lemmas", "Verify the polynomial identities of the case corpus");
  verify->add_option("--case", ver.case_id);
  verify->add_option("--ring", ver.ring)->check(CLI::IsMember({"Z", "F2"}));

  WitnessArgs wit;
  auto* witness = app.add_subcommand("witness", "Emit the minimality witness for one invariant");
  witness->add_option("--d", wit.d)->required()->check(CLI::Range(1, 64));
  witness->add_option("--invariant", wit.invariant)->required();
  witness->add_option("--field", wit.field);

  SelftestArgs st;
  auto* selftest = app.add_subcommand("selftest", "Run the randomized property suites");
  selftest->add_option("--seed", st.seed);
  selftest->add_option("--iters", st.iters)->check(CLI::PositiveNumber);
  selftest->add_option("--d", st.d)->check(CLI::Range(1, 64));
  selftest->add_option("--field", st.field);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (invariants->parsed()) return cmd_invariants(inv, out);
    if (separate->parsed()) return cmd_separate(sep, out);
    if (verify->parsed()) return cmd_verify(ver, out);
    if (witness->parsed()) return cmd_witness(wit, out);
    return cmd_selftest(st, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace matinv2
