#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "matinv2/witnesses.hpp"

namespace matinv2 {

using Rng = std::mt19937_64;

// Independent stream for (seed, stream, index); identical across runs.
Rng derive_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

// Q: integers in [-3, 3]. Finite fields: uniform.
FieldElement random_element(const Field& field, Rng& rng);
// 0, 1 or -1.
FieldElement random_sparse_element(const Field& field, Rng& rng);
Mat2 random_mat2(const Field& field, Rng& rng);
Mat2 random_invertible(const Field& field, Rng& rng);
MatrixTuple random_tuple(const Field& field, int d, Rng& rng);
// Upper-triangular tuple; strict gives zero diagonals (nilpotent entries).
MatrixTuple random_triangular(const Field& field, int d, Rng& rng, bool strict);

// Each free variable is drawn uniformly, from {0, 1, -1}, or copied from the
// opposite side's entry with the same position when that one is already set.
// Redraws (up to 64 times) while a unit vanishes.
ParamMap draw_family_params(const CaseSpec& spec, const Field& field, Rng& rng);

// The S(4) conditions a chain leaves open, as cleared numerators over Z.
std::vector<Poly> open_conditions(const CaseSpec& spec);

// Starts from draw_family_params or, half of the time, from a conjugate
// seed (u built from the presets, v = g u g^-1 for g diagonal, unipotent,
// the swap or random, free entries read off both). Then relaxes: each
// violated open condition is re-solved for a random free variable (never one
// that occurs in a unit) in which it is linear or quadratic, for at most
// kRounds passes. The result is only a parameter draw and may still fail the
// family post-check.
class GuidedFamilySampler {
 public:
  explicit GuidedFamilySampler(const CaseSpec& spec);
  const CaseSpec& spec() const { return spec_; }
  ParamMap draw(const Field& field, Rng& rng) const;

 private:
  ParamMap conjugate_seed(const Field& field, Rng& rng) const;

  struct OpenCondition {
    Poly residual;
    // (variable, coefficients in it) for the free non-unit variables of
    // degree 1 or 2
    std::vector<std::pair<int, std::vector<Poly>>> solvable;
  };

  static constexpr int kRounds = 16;
  CaseSpec spec_;
  std::vector<int> free_;
  std::vector<OpenCondition> open_;
};

}  // namespace matinv2
