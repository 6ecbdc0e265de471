#include "matinv2/invariants.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace matinv2 {
namespace {

void check_index(int i) {
  if (i < 1) throw Error(ErrorKind::kPreconditionViolated, "descriptor index " + std::to_string(i));
}

void check_d(int d) {
  if (d < 1) throw Error(ErrorKind::kPreconditionViolated, "d must be >= 1");
}

// All strictly increasing sequences of length `length` in [1, d], lex order.
void append_increasing_words(int d, int length, Catalog& out) {
  std::vector<int> word(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) word[static_cast<std::size_t>(i)] = i + 1;
  if (length > d) return;
  while (true) {
    out.push_back(InvariantDescriptor::tr(word));
    int pos = length - 1;
    while (pos >= 0 && word[static_cast<std::size_t>(pos)] == d - (length - 1 - pos)) --pos;
    if (pos < 0) return;
    ++word[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < length; ++j) {
      word[static_cast<std::size_t>(j)] = word[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

void append_singletons(int d, Catalog& out) {
  for (int i = 1; i <= d; ++i) {
    out.push_back(InvariantDescriptor::tr({i}));
    out.push_back(InvariantDescriptor::det(i));
  }
}

void check_compatible(const MatrixTuple& u, const MatrixTuple& v) {
  if (u.d() != v.d()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "d = " + std::to_string(u.d()) + " vs d = " + std::to_string(v.d()));
  }
  if (!(u.spec() == v.spec())) {
    throw Error(ErrorKind::kFieldMismatch, to_string(u.spec()) + " vs " + to_string(v.spec()));
  }
}

}  // namespace

InvariantDescriptor InvariantDescriptor::tr(std::vector<int> indices) {
  if (indices.empty()) throw Error(ErrorKind::kPreconditionViolated, "empty trace word");
  for (std::size_t n = 0; n < indices.size(); ++n) {
    check_index(indices[n]);
    if (n > 0 && indices[n] <= indices[n - 1]) {
      throw Error(ErrorKind::kPreconditionViolated, "trace word indices must increase strictly");
    }
  }
  return {Kind::kTrWord, std::move(indices), 0};
}

InvariantDescriptor InvariantDescriptor::det(int i) {
  check_index(i);
  return {Kind::kDet, {i}, 0};
}

InvariantDescriptor InvariantDescriptor::pair_sum(int k) {
  if (k < 3) throw Error(ErrorKind::kPreconditionViolated, "pairsum(k) needs k >= 3");
  return {Kind::kPairSum, {}, k};
}

int InvariantDescriptor::degree() const {
  switch (kind_) {
    case Kind::kTrWord: return static_cast<int>(indices_.size());
    case Kind::kDet: return 2;
    case Kind::kPairSum: return 2;
  }
  return 0;
}

std::optional<std::vector<int>> InvariantDescriptor::multidegree(int d) const {
  if (max_index() > d) throw Error(ErrorKind::kIndexOutOfRange, to_string() + " with d = " + std::to_string(d));
  std::vector<int> result(static_cast<std::size_t>(d), 0);
  switch (kind_) {
    case Kind::kTrWord:
      for (int i : indices_) ++result[static_cast<std::size_t>(i - 1)];
      return result;
    case Kind::kDet: result[static_cast<std::size_t>(indices_.front() - 1)] = 2; return result;
    case Kind::kPairSum: {
      int terms = 0;
      for (int i = 1; 2 * i < k_; ++i) {
        const int j = k_ - i;
        if (j > d) continue;
        ++terms;
        result[static_cast<std::size_t>(i - 1)] = 1;
        result[static_cast<std::size_t>(j - 1)] = 1;
      }
      if (terms != 1) return std::nullopt;
      return result;
    }
  }
  return std::nullopt;
}

int InvariantDescriptor::max_index() const {
  if (kind_ == Kind::kPairSum) return k_ / 2 + 1;  // smallest d admitting a term
  return *std::max_element(indices_.begin(), indices_.end());
}

std::string InvariantDescriptor::to_string() const {
  if (kind_ == Kind::kPairSum) return "pairsum(" + std::to_string(k_) + ")";
  std::string out = kind_ == Kind::kDet ? "det(" : "tr(";
  for (std::size_t n = 0; n < indices_.size(); ++n) {
    if (n > 0) out += ",";
    out += std::to_string(indices_[n]);
  }
  return out + ")";
}

InvariantDescriptor parse_descriptor(std::string_view text) {
  auto fail = [&text]() -> InvariantDescriptor {
    throw Error(ErrorKind::kParse, "malformed descriptor '" + std::string(text) + "'");
  };
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')') return fail();
  const std::string_view head = text.substr(0, open);
  std::string_view body = text.substr(open + 1, text.size() - open - 2);
  std::vector<int> numbers;
  while (true) {
    const auto comma = body.find(',');
    const std::string_view item = body.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) return fail();
    numbers.push_back(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  try {
    if (head == "tr") return InvariantDescriptor::tr(numbers);
    if (head == "det" && numbers.size() == 1) return InvariantDescriptor::det(numbers.front());
    if (head == "pairsum" && numbers.size() == 1) return InvariantDescriptor::pair_sum(numbers.front());
  } catch (const Error&) {
    return fail();
  }
  return fail();
}

// ---------------------------------------------------------------------------

Catalog separating_set(int d) {
  check_d(d);
  Catalog out;
  append_singletons(d, out);
  append_increasing_words(d, 2, out);
  append_increasing_words(d, 3, out);
  return out;
}

Catalog generating_set(int d, std::uint64_t characteristic) {
  check_d(d);
  if (characteristic != 2) return separating_set(d);
  if (d > kMaxCharTwoOracleDegree) {
    throw Error(ErrorKind::kOracleLimit, "characteristic-2 generating set limited to d <= " +
                                             std::to_string(kMaxCharTwoOracleDegree));
  }
  Catalog out;
  append_singletons(d, out);
  for (int length = 2; length <= d; ++length) append_increasing_words(d, length, out);
  return out;
}

Catalog zero_separating_set(int d) {
  check_d(d);
  Catalog out;
  append_singletons(d, out);
  for (int k = 3; k <= 2 * d - 1; ++k) out.push_back(InvariantDescriptor::pair_sum(k));
  return out;
}

FieldElement eval_invariant(const InvariantDescriptor& desc, const MatrixTuple& u) {
  switch (desc.kind()) {
    case InvariantDescriptor::Kind::kTrWord:
      return eval_word(u, std::span<const int>(desc.indices())).trace();
    case InvariantDescriptor::Kind::kDet: {
      const int i = desc.indices().front();
      if (i > u.d()) throw Error(ErrorKind::kIndexOutOfRange, desc.to_string());
      return u[i].det();
    }
    case InvariantDescriptor::Kind::kPairSum: {
      const int k = desc.pair_sum_k();
      if (desc.max_index() > u.d()) throw Error(ErrorKind::kIndexOutOfRange, desc.to_string());
      FieldElement sum = u.field().zero();
      for (int i = 1; 2 * i < k; ++i) {
        const int j = k - i;
        if (j <= u.d()) sum += (u[i] * u[j]).trace();
      }
      return sum;
    }
  }
  return u.field().zero();
}

Fingerprint fingerprint(const MatrixTuple& u, const Catalog& set) {
  Fingerprint fp;
  fp.descriptors = set;
  fp.values.reserve(set.size());
  for (const auto& desc : set) fp.values.push_back(eval_invariant(desc, u));
  return fp;
}

SeparationVerdict separated_by(const MatrixTuple& u, const MatrixTuple& v, const Catalog& set) {
  check_compatible(u, v);
  for (const auto& desc : set) {
    if (!(eval_invariant(desc, u) == eval_invariant(desc, v))) return {true, desc};
  }
  return {};
}

SeparationVerdict oracle_separated(const MatrixTuple& u, const MatrixTuple& v) {
  check_compatible(u, v);
  return separated_by(u, v, generating_set(u.d(), u.spec().characteristic()));
}

Prop4Result prop4_check(const MatrixTuple& u, const MatrixTuple& v) {
  if (u.d() != 4) throw Error(ErrorKind::kDimensionMismatch, "prop4_check needs d = 4");
  check_compatible(u, v);
  const auto full = InvariantDescriptor::tr({1, 2, 3, 4});
  return {!separated_by(u, v, separating_set(4)).separated,
          eval_invariant(full, u) == eval_invariant(full, v)};
}

}  // namespace matinv2
