#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "matinv2/sampling.hpp"

namespace matinv2 {

// Runs body(i) for i in [0, n) on up to `threads` workers (0: hardware
// concurrency). Results must be written to per-index slots by the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

// A nonseparated pair of d-tuples from a d = 4 family pair: slots beyond 4
// are the same random scalar matrix on both sides, d < 4 keeps the first d.
std::pair<MatrixTuple, MatrixTuple> pad_pair(const std::pair<MatrixTuple, MatrixTuple>& pair, int d, Rng& rng);

// tr of all 24 orderings of X1 X2 X3 X4 agree between u and v.
bool permuted_words_agree(const MatrixTuple& u, const MatrixTuple& v);

struct SuiteLine {
  std::string suite;
  std::string config;
  std::size_t instances = 0;
  std::size_t accepted = 0;  // suite specific: S-agreeing pairs, accepted draws
  std::size_t counterexamples = 0;
  std::string to_string() const;
};

struct SelftestOptions {
  std::uint64_t seed = 1;
  std::size_t iters = 100;
  std::optional<int> d;           // default 4, 5 and 6
  std::optional<FieldSpec> field; // default Q, F101 and GF(2^16)
  unsigned threads = 0;
};

std::vector<SuiteLine> conjugation_suite(const SelftestOptions& opt);
std::vector<SuiteLine> theorem_suite(const SelftestOptions& opt, const std::vector<CaseSpec>& cases);
// Fields only; d is always 4.
std::vector<SuiteLine> family_suite(const SelftestOptions& opt, const std::vector<CaseSpec>& cases);
std::vector<SuiteLine> run_selftest(const SelftestOptions& opt, const std::vector<CaseSpec>& cases);

}  // namespace matinv2
