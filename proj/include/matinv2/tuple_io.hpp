#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "matinv2/invariants.hpp"

namespace matinv2 {

// {"field": {"kind": ..., "p"?: int, "k"?: int}, "d": int,
//  "tuples": {name: [[[s, s], [s, s]], ...]}, "distinguishing"?: descriptor}
// Scalars are strings in the field's canonical text form.
struct TupleDocument {
  FieldSpec field;
  int d = 0;
  std::map<std::string, MatrixTuple> tuples;
  std::optional<InvariantDescriptor> distinguishing;

  // Throws PreconditionViolated for an unknown name.
  const MatrixTuple& tuple(const std::string& name) const;
};

// Throws Parse on malformed JSON, unknown keys, bad scalars or a tuple whose
// length differs from d.
TupleDocument parse_tuple_document(std::string_view json);
TupleDocument load_tuple_document(const std::filesystem::path& path);
std::string to_json(const TupleDocument& doc);

}  // namespace matinv2
