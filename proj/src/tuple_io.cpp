#include "matinv2/tuple_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace matinv2 {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::kParse, "tuple document: " + what); }

FieldSpec parse_field(const json& j) {
  if (!j.is_object()) fail("'field' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "kind" && key != "p" && key != "k") fail("unknown field key '" + key + "'");
  }
  if (!j.contains("kind") || !j["kind"].is_string()) fail("field.kind must be a string");
  const std::string kind = j["kind"];
  FieldSpec spec;
  if (kind == "rational") {
    if (j.contains("p") || j.contains("k")) fail("rational field takes no parameters");
    spec = FieldSpec::rational();
  } else if (kind == "prime") {
    if (!j.contains("p") || !j["p"].is_number_unsigned() || j.contains("k")) fail("prime field needs an unsigned 'p'");
    spec = FieldSpec::prime(j["p"].get<std::uint64_t>());
  } else if (kind == "gf2k") {
    if (!j.contains("k") || !j["k"].is_number_unsigned() || j.contains("p")) fail("gf2k field needs an unsigned 'k'");
    spec = FieldSpec::gf2k(j["k"].get<unsigned>());
  } else {
    fail("unknown field kind '" + kind + "'");
  }
  try {
    validate(spec);
  } catch (const Error& e) {
    fail(e.what());
  }
  return spec;
}

ordered_json field_json(const FieldSpec& spec) {
  ordered_json j;
  switch (spec.kind) {
    case FieldKind::kRational: j["kind"] = "rational"; break;
    case FieldKind::kPrime:
      j["kind"] = "prime";
      j["p"] = spec.p;
      break;
    case FieldKind::kGf2k:
      j["kind"] = "gf2k";
      j["k"] = spec.k;
      break;
  }
  return j;
}

Mat2 parse_matrix(const json& j, const Field& field, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where + ": matrix must have two rows");
  std::vector<FieldElement> entries;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 2) fail(where + ": row must have two entries");
    for (const auto& s : row) {
      if (!s.is_string()) fail(where + ": scalars must be strings");
      try {
        entries.push_back(field.parse(s.get<std::string>()));
      } catch (const Error& e) {
        fail(where + ": " + e.what());
      }
    }
  }
  return {entries[0], entries[1], entries[2], entries[3]};
}

}  // namespace

const MatrixTuple& TupleDocument::tuple(const std::string& name) const {
  const auto it = tuples.find(name);
  if (it == tuples.end()) throw Error(ErrorKind::kPreconditionViolated, "no tuple named '" + name + "'");
  return it->second;
}

TupleDocument parse_tuple_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(e.what());
  }
  if (!j.is_object()) fail("top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "field" && key != "d" && key != "tuples" && key != "distinguishing") fail("unknown key '" + key + "'");
  }
  if (!j.contains("field") || !j.contains("d") || !j.contains("tuples")) fail("needs 'field', 'd' and 'tuples'");
  TupleDocument doc;
  doc.field = parse_field(j["field"]);
  if (!j["d"].is_number_integer() || j["d"].get<long long>() < 1 || j["d"].get<long long>() > 64) {
    fail("'d' must be a positive integer");
  }
  doc.d = j["d"].get<int>();
  if (!j["tuples"].is_object()) fail("'tuples' must be an object");
  const Field field(doc.field);
  for (const auto& [name, mats] : j["tuples"].items()) {
    if (!mats.is_array() || mats.size() != static_cast<std::size_t>(doc.d)) {
      fail("tuple '" + name + "' must have " + std::to_string(doc.d) + " matrices");
    }
    std::vector<Mat2> parsed;
    for (std::size_t i = 0; i < mats.size(); ++i) {
      parsed.push_back(parse_matrix(mats[i], field, name + "[" + std::to_string(i + 1) + "]"));
    }
    doc.tuples.emplace(name, MatrixTuple(std::move(parsed)));
  }
  if (j.contains("distinguishing")) {
    if (!j["distinguishing"].is_string()) fail("'distinguishing' must be a string");
    try {
      doc.distinguishing = parse_descriptor(j["distinguishing"].get<std::string>());
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return doc;
}

TupleDocument load_tuple_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_tuple_document(buffer.str());
}

std::string to_json(const TupleDocument& doc) {
  ordered_json j;
  j["field"] = field_json(doc.field);
  j["d"] = doc.d;
  ordered_json tuples = ordered_json::object();
  for (const auto& [name, tuple] : doc.tuples) {
    ordered_json mats = ordered_json::array();
    for (const Mat2& m : tuple.mats()) {
      ordered_json top = ordered_json::array();
      top.push_back(m.e11().to_string());
      top.push_back(m.e12().to_string());
      ordered_json bottom = ordered_json::array();
      bottom.push_back(m.e21().to_string());
      bottom.push_back(m.e22().to_string());
      mats.push_back(ordered_json::array({std::move(top), std::move(bottom)}));
    }
    tuples[name] = std::move(mats);
  }
  j["tuples"] = std::move(tuples);
  if (doc.distinguishing) j["distinguishing"] = doc.distinguishing->to_string();
  return j.dump(2) + "\n";
}

}  // namespace matinv2
