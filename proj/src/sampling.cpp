#include "matinv2/sampling.hpp"

#include <algorithm>

namespace matinv2 {
namespace {

std::vector<FieldElement> point_of(const ParamMap& params, const Field& field) {
  std::vector<FieldElement> point(kNumVars, field.zero());
  for (const auto& [var, value] : params) point[static_cast<std::size_t>(var)] = value;
  return point;
}

bool units_nonzero(const CaseSpec& spec, const ParamMap& params, const Field& field) {
  const std::vector<FieldElement> point = point_of(params, field);
  for (const Poly& unit : spec.units) {
    if (unit.evaluate(point).is_zero()) return false;
  }
  return true;
}

std::vector<ConditionId> s4_conditions() {
  std::vector<ConditionId> out;
  for (int i = 1; i <= 4; ++i) {
    out.push_back(ConditionId::trace({i}));
    out.push_back(ConditionId::det(i));
  }
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) out.push_back(ConditionId::trace({i, j}));
  }
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      for (int k = j + 1; k <= 4; ++k) out.push_back(ConditionId::trace({i, j, k}));
    }
  }
  return out;
}

int variable_count(const Poly& p) {
  int n = 0;
  for (int v = 0; v < kNumVars; ++v) n += p.uses(v) ? 1 : 0;
  return n;
}

// Relaxation over Q can blow up heights; such draws are handed back as is.
bool too_large(const FieldElement& x) {
  if (x.spec().kind != FieldKind::kRational) return false;
  return mpz_sizeinbase(x.rational().get_num_mpz_t(), 2) + mpz_sizeinbase(x.rational().get_den_mpz_t(), 2) > 256;
}

Mat2 random_seed_conjugator(const Field& field, Rng& rng) {
  for (;;) {
    const FieldElement s = random_element(field, rng);
    const FieldElement t = random_element(field, rng);
    Mat2 g = Mat2::identity(field);
    switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
      case 0: g = Mat2::diag(s, t); break;
      case 1: g = Mat2(field.one(), s, field.zero(), field.one()); break;
      case 2: g = Mat2(field.one(), field.zero(), s, field.one()); break;
      case 3: g = swap_conjugator(field); break;
      default: g = random_mat2(field, rng); break;
    }
    if (!g.det().is_zero()) return g;
  }
}

}  // namespace

Rng derive_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

FieldElement random_element(const Field& field, Rng& rng) {
  const FieldSpec& spec = field.spec();
  switch (spec.kind) {
    case FieldKind::kRational: return field.from_integer(std::uniform_int_distribution<int>(-3, 3)(rng));
    case FieldKind::kPrime: return {spec, std::uniform_int_distribution<std::uint64_t>(0, spec.p - 1)(rng)};
    case FieldKind::kGf2k: return {spec, std::uniform_int_distribution<std::uint64_t>(0, (1ULL << spec.k) - 1)(rng)};
  }
  return field.zero();
}

FieldElement random_sparse_element(const Field& field, Rng& rng) {
  return field.from_integer(std::uniform_int_distribution<int>(-1, 1)(rng));
}

Mat2 random_mat2(const Field& field, Rng& rng) {
  FieldElement a = random_element(field, rng);
  FieldElement b = random_element(field, rng);
  FieldElement c = random_element(field, rng);
  FieldElement d = random_element(field, rng);
  return {std::move(a), std::move(b), std::move(c), std::move(d)};
}

Mat2 random_invertible(const Field& field, Rng& rng) {
  for (;;) {
    Mat2 g = random_mat2(field, rng);
    if (!g.det().is_zero()) return g;
  }
}

MatrixTuple random_tuple(const Field& field, int d, Rng& rng) {
  std::vector<Mat2> mats;
  for (int i = 0; i < d; ++i) mats.push_back(random_mat2(field, rng));
  return MatrixTuple(std::move(mats));
}

MatrixTuple random_triangular(const Field& field, int d, Rng& rng, bool strict) {
  std::vector<Mat2> mats;
  for (int i = 0; i < d; ++i) {
    FieldElement a = strict ? field.zero() : random_element(field, rng);
    FieldElement b = random_element(field, rng);
    FieldElement e = strict ? field.zero() : random_element(field, rng);
    mats.emplace_back(std::move(a), std::move(b), field.zero(), std::move(e));
  }
  return MatrixTuple(std::move(mats));
}

ParamMap draw_family_params(const CaseSpec& spec, const Field& field, Rng& rng) {
  const std::vector<int> free = free_variables(spec);
  const int attempts = 64;
  ParamMap params;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    params.clear();
    for (int var : free) {
      const int partner = var < 16 ? var + 16 : var - 16;
      const int mode = std::uniform_int_distribution<int>(0, 2)(rng);
      if (mode == 2 && params.contains(partner)) {
        params.emplace(var, params.at(partner));
      } else if (mode == 1) {
        params.emplace(var, random_sparse_element(field, rng));
      } else {
        params.emplace(var, random_element(field, rng));
      }
    }
    if (units_nonzero(spec, params, field)) return params;
  }
  return params;
}

std::vector<Poly> open_conditions(const CaseSpec& spec) {
  std::vector<Poly> out;
  for (const auto& c : s4_conditions()) {
    Poly r = substitute_chain(condition_poly(c), spec).num;
    if (!r.is_zero()) out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Poly& a, const Poly& b) { return variable_count(a) < variable_count(b); });
  return out;
}

GuidedFamilySampler::GuidedFamilySampler(const CaseSpec& spec) : spec_(spec), free_(free_variables(spec)) {
  std::vector<bool> in_unit(kNumVars, false);
  for (const Poly& u : spec_.units) {
    for (int v = 0; v < kNumVars; ++v) in_unit[static_cast<std::size_t>(v)] = in_unit[static_cast<std::size_t>(v)] || u.uses(v);
  }
  for (Poly& r : open_conditions(spec_)) {
    OpenCondition cond{std::move(r), {}};
    for (int v : free_) {
      const int deg = cond.residual.degree_in(v);
      if (!in_unit[static_cast<std::size_t>(v)] && (deg == 1 || deg == 2)) {
        cond.solvable.emplace_back(v, cond.residual.coefficients_in(v));
      }
    }
    open_.push_back(std::move(cond));
  }
}

ParamMap GuidedFamilySampler::conjugate_seed(const Field& field, Rng& rng) const {
  std::vector<FieldElement> point(kNumVars, field.zero());
  for (int v = 0; v < 16; ++v) point[static_cast<std::size_t>(v)] = random_element(field, rng);
  for (const ChainStep& step : spec_.presets) {
    if (step.var < 16 && step.value.unit_powers.empty()) {
      point[static_cast<std::size_t>(step.var)] = step.value.num.evaluate(point);
    }
  }
  std::vector<Mat2> a;
  for (std::size_t k = 0; k < 4; ++k) a.emplace_back(point[4 * k], point[4 * k + 1], point[4 * k + 2], point[4 * k + 3]);
  const MatrixTuple v = conjugate(random_seed_conjugator(field, rng), MatrixTuple(std::move(a)));
  for (int k = 0; k < 4; ++k) {
    for (int e = 0; e < 4; ++e) point[static_cast<std::size_t>(16 + 4 * k + e)] = v[k + 1](e / 2 + 1, e % 2 + 1);
  }
  ParamMap params;
  for (int var : free_) params.emplace(var, point[static_cast<std::size_t>(var)]);
  return params;
}

ParamMap GuidedFamilySampler::draw(const Field& field, Rng& rng) const {
  ParamMap params;
  if (std::bernoulli_distribution(0.5)(rng)) params = conjugate_seed(field, rng);
  if (params.empty() || !units_nonzero(spec_, params, field)) params = draw_family_params(spec_, field, rng);
  std::vector<FieldElement> point = point_of(params, field);

  for (int round = 0; round < kRounds; ++round) {
    bool all_zero = true;
    for (const OpenCondition& cond : open_) {
      if (cond.residual.evaluate(point).is_zero()) continue;
      all_zero = false;
      std::vector<std::size_t> order(cond.solvable.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t i : order) {
        const auto& [x, coeffs] = cond.solvable[i];
        std::vector<FieldElement> c;
        for (const Poly& cp : coeffs) c.push_back(cp.evaluate(point));
        std::optional<FieldElement> root;
        if (c.size() == 2 && !c[1].is_zero()) {
          root = -c[0] / c[1];
        } else if (c.size() == 3 && !c[2].is_zero()) {
          root = quadratic_root(c[2], c[1], c[0]);
        }
        if (root && too_large(*root)) return params;
        if (root) {
          point[static_cast<std::size_t>(x)] = *root;
          params.insert_or_assign(x, *root);
          break;
        }
      }
    }
    if (all_zero) break;
  }
  return params;
}

}  // namespace matinv2
