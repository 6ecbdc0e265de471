#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matinv2/poly.hpp"

namespace matinv2 {

// One of the equalities between two 4-tuples u = (A_i), v = (B_i):
//   T(i)     tr(A_i) = tr(B_i)
//   D(i)     det(A_i) = det(B_i)
//   T(i,j), T(i,j,k)  traces of increasing words
//   Q        tr(A_1 A_2 A_3 A_4) = tr(B_1 B_2 B_3 B_4)
struct ConditionId {
  enum class Tag { kTrace, kDet, kQ };
  Tag tag = Tag::kQ;
  std::vector<int> indices;

  // Throw PreconditionViolated unless indices lie in [1,4] and increase.
  static ConditionId trace(std::vector<int> indices);
  static ConditionId det(int i);
  static ConditionId q() { return {}; }

  std::string to_string() const;  // "T(1,3,4)", "D(2)", "Q"
  friend bool operator==(const ConditionId&, const ConditionId&) = default;
};

// A polynomial in a1..a16, b1..b16 in the case-file expression syntax,
// without conditions or division. Throws Parse, IllegalDenominator.
Poly parse_poly(std::string_view text, CoefficientRing ring = CoefficientRing::integers());

// The difference polynomial: A-side minus B-side, over Z.
Poly condition_poly(const ConditionId& c);

// A rational expression num / prod(units[i]^unit_powers[i]).
struct UnitFraction {
  Poly num;
  std::vector<int> unit_powers;
};

struct ChainStep {
  int var = 0;
  UnitFraction value;
};

// One proof branch: presets normalise entries, substitutions are the
// elimination steps, units are the quantities assumed nonzero, and the
// target asserts Q = target.
struct CaseSpec {
  std::string id;
  CoefficientRing ring;
  std::vector<std::string> notes;
  std::vector<Poly> units;  // as written, before presets
  std::vector<ChainStep> presets;
  std::vector<ChainStep> substitutions;
  UnitFraction target;
  std::string target_text;
  std::vector<ConditionId> target_conditions;  // conditions referenced by the target
};

// Parses the line-oriented case format; a file may hold several cases, each
// opened by `case <ID>`. Throws Parse, MalformedChain, IllegalDenominator.
std::vector<CaseSpec> parse_cases(std::string_view text, std::string_view origin = "<memory>");
std::vector<CaseSpec> load_case_file(const std::filesystem::path& path);

// MATINV2_CORPUS if set (a directory of *.case files or one file), the
// compiled-in corpus directory otherwise.
std::filesystem::path corpus_path();
std::vector<CaseSpec> load_corpus(const std::filesystem::path& path);
std::vector<CaseSpec> builtin_case_suite();
// Throws PreconditionViolated for an unknown id.
const CaseSpec& find_case(const std::vector<CaseSpec>& suite, std::string_view id);

// Presets folded into every later right-hand side, then the substitutions.
// Each step's value is free of its own variable and of every variable
// eliminated before it, and no step touches a variable of a unit. Throws
// MalformedChain.
std::vector<ChainStep> normalized_chain(const CaseSpec& spec);
// Sorted variables that no step eliminates.
std::vector<int> free_variables(const CaseSpec& spec);

struct ChainResult {
  Poly num;
  Poly den;  // product of units
  std::vector<int> unit_powers;
};

// Applies the chain to f / prod(units^f_powers) in the given ring.
ChainResult substitute_chain(const UnitFraction& f, const CaseSpec& spec, CoefficientRing ring);
ChainResult substitute_chain(const Poly& f, const CaseSpec& spec);

struct CertificateReport {
  std::string id;
  CoefficientRing ring;
  bool passed = false;
  Poly residue;     // cleared numerator of Q - target after the chain
  Poly multiplier;  // the unit product that was cleared
  std::size_t chain_length = 0;
};

// Forms Q - target, applies the chain, and passes iff the cleared numerator
// vanishes identically. `ring` overrides the case ring.
CertificateReport verify_case(const CaseSpec& spec, std::optional<CoefficientRing> ring = std::nullopt);

// Mutates the target coefficient of its n-th referenced condition c by +1
// (target + c); when the target references no condition, target + 1.
CaseSpec mutate_target(const CaseSpec& spec, std::size_t n);

}  // namespace matinv2
