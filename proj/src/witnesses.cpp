#include "matinv2/witnesses.hpp"

#include <algorithm>

namespace matinv2 {
namespace {

std::vector<Mat2> zeros(const Field& field, int d) {
  return std::vector<Mat2>(static_cast<std::size_t>(d), Mat2::zero(field));
}

void place(std::vector<Mat2>& slots, int index, Mat2 m) { slots[static_cast<std::size_t>(index - 1)] = std::move(m); }

}  // namespace

WitnessPair witness_for(const InvariantDescriptor& f, int d, const Field& field) {
  const Catalog set = separating_set(d);
  if (std::find(set.begin(), set.end(), f) == set.end()) {
    throw Error(ErrorKind::kDescriptorNotInSet, f.to_string() + " is not in S(" + std::to_string(d) + ")");
  }
  std::vector<Mat2> u = zeros(field, d);
  std::vector<Mat2> v = zeros(field, d);
  const std::vector<int>& idx = f.indices();
  if (f.kind() == InvariantDescriptor::Kind::kDet) {
    place(u, idx[0], Mat2::from_integers(field, 1, 0, 0, -1));
  } else if (idx.size() == 1) {
    place(u, idx[0], Mat2::from_integers(field, 1, 0, 0, 0));
  } else if (idx.size() == 2) {
    place(u, idx[0], Mat2::unit(field, 1, 2));
    place(u, idx[1], Mat2::unit(field, 2, 1));
  } else {
    place(u, idx[0], Mat2::unit(field, 1, 1));
    place(v, idx[0], Mat2::unit(field, 2, 2));
    for (auto* side : {&u, &v}) {
      place(*side, idx[1], Mat2::unit(field, 2, 1));
      place(*side, idx[2], Mat2::unit(field, 1, 2));
    }
  }
  WitnessPair w{MatrixTuple(std::move(u)), MatrixTuple(std::move(v)), f};
  if (!check_witness(w, d)) {
    throw Error(ErrorKind::kPreconditionViolated, "witness for " + f.to_string() + " failed its check");
  }
  return w;
}

bool check_witness(const WitnessPair& w, int d) {
  if (w.u.d() != d || w.v.d() != d) {
    throw Error(ErrorKind::kDimensionMismatch, "witness tuples must have d = " + std::to_string(d));
  }
  if (!(w.u.spec() == w.v.spec())) throw Error(ErrorKind::kFieldMismatch, "witness tuples");
  bool distinguished = false;
  bool found = false;
  for (const auto& desc : separating_set(d)) {
    const bool equal = eval_invariant(desc, w.u) == eval_invariant(desc, w.v);
    if (desc == w.distinguishing) {
      found = true;
      distinguished = !equal;
    } else if (!equal) {
      return false;
    }
  }
  if (!found) {
    throw Error(ErrorKind::kDescriptorNotInSet, w.distinguishing.to_string() + " is not in S(" + std::to_string(d) + ")");
  }
  return distinguished;
}

std::pair<MatrixTuple, MatrixTuple> conjugate_pair(const MatrixTuple& u, const Mat2& g) {
  return {u, conjugate(g, u)};
}

std::pair<MatrixTuple, MatrixTuple> tuples_from_point(std::span<const FieldElement> point) {
  if (point.size() != kNumVars) throw Error(ErrorKind::kDimensionMismatch, "point needs 32 entries");
  std::vector<Mat2> a;
  std::vector<Mat2> b;
  for (int k = 1; k <= 4; ++k) {
    for (auto [side, out] : {std::pair{Side::kA, &a}, std::pair{Side::kB, &b}}) {
      const int base = var_index(side, 4 * (k - 1) + 1);
      out->emplace_back(point[base], point[base + 1], point[base + 2], point[base + 3]);
    }
  }
  return {MatrixTuple(std::move(a)), MatrixTuple(std::move(b))};
}

std::optional<std::pair<MatrixTuple, MatrixTuple>> nonseparated_family(const CaseSpec& spec,
                                                                       const ParamMap& params) {
  const std::vector<ChainStep> chain = normalized_chain(spec);
  if (params.empty()) throw Error(ErrorKind::kMissingParameter, spec.id + ": no parameters");
  const FieldSpec field_spec = params.begin()->second.spec();
  const Field field(field_spec);

  std::vector<std::optional<FieldElement>> values(kNumVars);
  for (const auto& [var, value] : params) {
    if (var < 0 || var >= kNumVars) throw Error(ErrorKind::kIndexOutOfRange, "parameter variable index");
    if (!(value.spec() == field_spec)) throw Error(ErrorKind::kPreconditionViolated, "parameters from different fields");
    values[static_cast<std::size_t>(var)] = value;
  }
  for (const auto& step : chain) {
    if (values[static_cast<std::size_t>(step.var)]) {
      throw Error(ErrorKind::kPreconditionViolated, spec.id + ": " + var_name(step.var) + " is determined by the chain");
    }
  }
  for (int var : free_variables(spec)) {
    if (!values[static_cast<std::size_t>(var)]) {
      throw Error(ErrorKind::kMissingParameter, spec.id + ": no value for " + var_name(var));
    }
  }

  // Units only involve free variables; placeholders keep the point full.
  auto point = [&values, &field]() {
    std::vector<FieldElement> p;
    p.reserve(kNumVars);
    for (const auto& v : values) p.push_back(v.value_or(field.zero()));
    return p;
  };
  std::vector<FieldElement> unit_values;
  {
    const std::vector<FieldElement> p = point();
    for (const Poly& unit : spec.units) {
      FieldElement value = unit.evaluate(p);
      if (value.is_zero()) throw Error(ErrorKind::kUnitVanishes, spec.id + ": unit " + unit.to_string() + " is zero");
      unit_values.push_back(std::move(value));
    }
  }

  // Step k only depends on free variables and on steps after it.
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    FieldElement value = it->value.num.evaluate(point());
    for (std::size_t i = 0; i < unit_values.size(); ++i) {
      const int e = i < it->value.unit_powers.size() ? it->value.unit_powers[i] : 0;
      if (e > 0) value /= unit_values[i].pow(static_cast<std::uint64_t>(e));
    }
    values[static_cast<std::size_t>(it->var)] = std::move(value);
  }

  auto pair = tuples_from_point(point());
  if (separated_by(pair.first, pair.second, separating_set(4)).separated) return std::nullopt;
  return pair;
}

std::optional<std::pair<MatrixTuple, MatrixTuple>> nonseparated_family(std::string_view case_id,
                                                                       const ParamMap& params) {
  const std::vector<CaseSpec> suite = builtin_case_suite();
  return nonseparated_family(find_case(suite, case_id), params);
}

}  // namespace matinv2
