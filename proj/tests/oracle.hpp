#pragma once

// Test-side reference computations that do not go through Mat2, Poly or the
// catalogs.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "matinv2/invariants.hpp"

namespace oracle {

using matinv2::FieldElement;
using matinv2::MatrixTuple;

using Raw = std::array<FieldElement, 4>;

inline Raw raw(const matinv2::Mat2& m) { return {m.e11(), m.e12(), m.e21(), m.e22()}; }

inline Raw mul(const Raw& x, const Raw& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

inline FieldElement trace_word(const MatrixTuple& u, const std::vector<int>& word) {
  Raw acc = raw(u[word.front()]);
  for (std::size_t i = 1; i < word.size(); ++i) acc = mul(acc, raw(u[word[i]]));
  return acc[0] + acc[3];
}

inline FieldElement det(const MatrixTuple& u, int i) {
  const Raw m = raw(u[i]);
  return m[0] * m[3] - m[1] * m[2];
}

// Every nonempty increasing word in 1..d, by length then lexicographically.
inline std::vector<std::vector<int>> increasing_words(int d, int max_len) {
  std::vector<std::vector<int>> out;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<bool> pick(static_cast<std::size_t>(d), false);
    std::fill(pick.begin(), pick.begin() + len, true);
    do {
      std::vector<int> w;
      for (int i = 0; i < d; ++i) {
        if (pick[static_cast<std::size_t>(i)]) w.push_back(i + 1);
      }
      out.push_back(w);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

// Values of the generators of the invariant ring: det(X_i) and tr of the
// increasing words of length <= 3 (char != 2) or of any length (char 2).
inline std::vector<FieldElement> generator_values(const MatrixTuple& u) {
  const int d = u.d();
  std::vector<FieldElement> out;
  for (int i = 1; i <= d; ++i) out.push_back(det(u, i));
  const int max_len = u.spec().characteristic() == 2 ? d : std::min(d, 3);
  for (const auto& w : increasing_words(d, max_len)) out.push_back(trace_word(u, w));
  return out;
}

inline std::vector<FieldElement> s_values(const MatrixTuple& u) {
  const int d = u.d();
  std::vector<FieldElement> out;
  for (int i = 1; i <= d; ++i) out.push_back(det(u, i));
  for (const auto& w : increasing_words(d, std::min(d, 3))) out.push_back(trace_word(u, w));
  return out;
}

// Polynomials over GF(2) as bit masks.
inline std::uint64_t gf2_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f) {
  int deg = 63;
  while (((f >> deg) & 1) == 0) --deg;
  std::uint64_t r = 0;
  for (int i = deg - 1; i >= 0; --i) {
    r <<= 1;
    if ((r >> deg) & 1) r ^= f;
    if ((b >> i) & 1) r ^= a;
  }
  return r;
}

inline std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t f) {
  int deg = 63;
  while (((f >> deg) & 1) == 0) --deg;
  for (int i = 63; i >= deg; --i) {
    if ((a >> i) & 1) a ^= f << (i - deg);
  }
  return a;
}

inline std::uint64_t gf2_gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a = gf2_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// Rabin's test for a degree-k polynomial f, k a power of two.
inline bool rabin_irreducible(std::uint64_t f, unsigned k) {
  auto frob = [&](std::uint64_t x, unsigned times) {
    for (unsigned i = 0; i < times; ++i) x = gf2_mulmod(x, x, f);
    return x;
  };
  const std::uint64_t t = gf2_mod(2, f);
  if (frob(t, k) != t) return false;
  if (k == 1) return true;
  return gf2_gcd(f, frob(t, k / 2) ^ t) == 1;
}

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

}  // namespace oracle
