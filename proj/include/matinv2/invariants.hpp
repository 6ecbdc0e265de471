#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matinv2/mat2.hpp"

namespace matinv2 {

// Names one invariant function on H = M(2)^d:
//   TrWord  tr(X_{i1} ... X_{is}) with i1 < ... < is
//   Det     det(X_i)
//   PairSum sum over i + j = k, i < j, of tr(X_i X_j)
class InvariantDescriptor {
 public:
  enum class Kind { kTrWord, kDet, kPairSum };

  // Throws PreconditionViolated unless indices are strictly increasing
  // and >= 1.
  static InvariantDescriptor tr(std::vector<int> indices);
  static InvariantDescriptor det(int i);
  static InvariantDescriptor pair_sum(int k);

  Kind kind() const { return kind_; }
  // TrWord indices; Det holds its single index.
  const std::vector<int>& indices() const { return indices_; }
  int pair_sum_k() const { return k_; }

  int degree() const;
  // Per-index degree vector; nothing for a PairSum with more than one term
  // (it is homogeneous in degree only).
  std::optional<std::vector<int>> multidegree(int d) const;
  // Largest matrix index referenced.
  int max_index() const;

  // Bit-exact text form: "tr(1)", "det(3)", "tr(1,2,4)", "pairsum(5)".
  std::string to_string() const;

  friend bool operator==(const InvariantDescriptor&, const InvariantDescriptor&) = default;

 private:
  InvariantDescriptor(Kind kind, std::vector<int> indices, int k)
      : kind_(kind), indices_(std::move(indices)), k_(k) {}

  Kind kind_;
  std::vector<int> indices_;
  int k_ = 0;
};

// Inverse of InvariantDescriptor::to_string. Throws Parse.
InvariantDescriptor parse_descriptor(std::string_view text);

using Catalog = std::vector<InvariantDescriptor>;

// The largest d accepted by generating_set in characteristic 2 (2^d growth).
inline constexpr int kMaxCharTwoOracleDegree = 12;

// tr(X_i), det(X_i); tr(X_i X_j), i<j; tr(X_i X_j X_k), i<j<k.
Catalog separating_set(int d);
// Characteristic != 2: same set as separating_set. Characteristic 2: det(X_i)
// and tr of every nonempty increasing word. Throws OracleLimit for
// characteristic 2 and d > kMaxCharTwoOracleDegree.
Catalog generating_set(int d, std::uint64_t characteristic);
// tr(X_i), det(X_i) and pairsum(k), 3 <= k <= 2d - 1.
Catalog zero_separating_set(int d);

// Throws IndexOutOfRange when desc references an index beyond u.d().
FieldElement eval_invariant(const InvariantDescriptor& desc, const MatrixTuple& u);

struct Fingerprint {
  Catalog descriptors;
  std::vector<FieldElement> values;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const MatrixTuple& u, const Catalog& set);

struct SeparationVerdict {
  bool separated = false;
  std::optional<InvariantDescriptor> witness;  // first differing descriptor
};

// Throws DimensionMismatch / FieldMismatch for incompatible tuples.
SeparationVerdict separated_by(const MatrixTuple& u, const MatrixTuple& v, const Catalog& set);

// Separation by the whole invariant ring, decided on generating_set(d, char).
// Over a finite field this means disagreement on the evaluated generators.
SeparationVerdict oracle_separated(const MatrixTuple& u, const MatrixTuple& v);

struct Prop4Result {
  bool hypothesis_holds = false;  // u and v agree on separating_set(4)
  bool conclusion_holds = false;  // tr(X1 X2 X3 X4) agrees
};

// Throws DimensionMismatch unless both tuples have d = 4.
Prop4Result prop4_check(const MatrixTuple& u, const MatrixTuple& v);

}  // namespace matinv2
