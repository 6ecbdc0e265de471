#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <utility>

#include "matinv2/certificate.hpp"
#include "matinv2/invariants.hpp"

namespace matinv2 {

// Two tuples that agree on separating_set(d) minus `distinguishing` and
// disagree on it: removing that invariant leaves a set that is not separating.
struct WitnessPair {
  MatrixTuple u;
  MatrixTuple v;
  InvariantDescriptor distinguishing;
};

// Places the one-, two- or three-slot construction at the indices of f and
// zero matrices elsewhere. Throws DescriptorNotInSet unless f is in S(d).
WitnessPair witness_for(const InvariantDescriptor& f, int d, const Field& field);

// Exact check of the WitnessPair property. Throws DimensionMismatch when the
// tuples do not have d matrices.
bool check_witness(const WitnessPair& w, int d);

// (u, g u g^-1). Throws SingularConjugator.
std::pair<MatrixTuple, MatrixTuple> conjugate_pair(const MatrixTuple& u, const Mat2& g);

// Values for the free variables of a case, keyed by variable index.
using ParamMap = std::map<int, FieldElement>;

// Instantiates a case chain numerically: free entries from params, eliminated
// entries by evaluating the chain backwards. Returns the d = 4 pair when it
// agrees on all of S(4) and nothing otherwise (the chain holds necessary
// conditions only). Throws MissingParameter, UnitVanishes and
// PreconditionViolated (a parameter given for an eliminated variable, or
// values from different fields).
std::optional<std::pair<MatrixTuple, MatrixTuple>> nonseparated_family(const CaseSpec& spec,
                                                                       const ParamMap& params);
std::optional<std::pair<MatrixTuple, MatrixTuple>> nonseparated_family(std::string_view case_id,
                                                                       const ParamMap& params);

// The 4-tuples with A_k / B_k entries read from a full 32-entry point.
std::pair<MatrixTuple, MatrixTuple> tuples_from_point(std::span<const FieldElement> point);

}  // namespace matinv2
