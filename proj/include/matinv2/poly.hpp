#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "matinv2/field.hpp"
#include "matinv2/mat2.hpp"

namespace matinv2 {

// Variables a1..a16 (indices 0..15) and b1..b16 (indices 16..31): the
// entries of two 4-tuples of generic 2x2 matrices, row-major per matrix.
inline constexpr int kNumVars = 32;

enum class Side { kA, kB };

int var_index(Side side, int entry);  // entry in [1, 16]
// Throws Parse for anything but a1..a16 / b1..b16.
int parse_var(std::string_view name);
std::string var_name(int var);

// Z when modulus == 0, otherwise F_modulus (modulus prime).
struct CoefficientRing {
  std::uint64_t modulus = 0;

  static CoefficientRing integers() { return {0}; }
  static CoefficientRing mod(std::uint64_t p) { return {p}; }

  friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;
};

std::string to_string(const CoefficientRing& ring);  // "Z", "F2", ...
// Accepts "Z" and "F<p>". Throws Parse.
CoefficientRing parse_ring(std::string_view text);

struct Monomial {
  std::array<std::uint8_t, kNumVars> exponents{};

  int total_degree() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic order with a1 > a2 > ... > b16.
struct GrlexLess {
  bool operator()(const Monomial& lhs, const Monomial& rhs) const;
};

// Sparse multivariate polynomial; zero coefficients are never stored, so
// structural equality is polynomial equality.
class Poly {
 public:
  explicit Poly(CoefficientRing ring = CoefficientRing::integers()) : ring_(ring) {}

  static Poly constant(CoefficientRing ring, const mpz_class& c);
  static Poly variable(CoefficientRing ring, int var);

  const CoefficientRing& ring() const { return ring_; }
  const std::map<Monomial, mpz_class, GrlexLess>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;
  int degree_in(int var) const;
  bool uses(int var) const { return degree_in(var) > 0; }

  // Image under Z -> F_p (or identity).
  Poly reduce(CoefficientRing target) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(const mpz_class& c, const Poly& p);
  Poly pow(unsigned e) const;

  // Coefficients of var^0 .. var^deg as polynomials free of var.
  std::vector<Poly> coefficients_in(int var) const;
  Poly substitute(int var, const Poly& value) const;
  // f(var = num/den) * den^deg_var(f).
  Poly substitute_fraction(int var, const Poly& num, const Poly& den) const;

  // Point holds one value per variable; coefficients enter via from_integer.
  FieldElement evaluate(std::span<const FieldElement> point) const;

  std::string to_string() const;

  friend bool operator==(const Poly& lhs, const Poly& rhs);

 private:
  void add_term(const Monomial& m, const mpz_class& c);
  void normalize(mpz_class& c) const;
  void check_ring(const Poly& rhs) const;

  CoefficientRing ring_;
  std::map<Monomial, mpz_class, GrlexLess> terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

// The generic matrix A_k (or B_k) with entries a_{4k-3}, ..., a_{4k}.
struct GenericMat2 {
  Poly e11, e12, e21, e22;
};

GenericMat2 generic_matrix(int k, Side side, CoefficientRing ring = CoefficientRing::integers());

// Trace of the product of generic matrices along w; indices in [1, 4].
// Throws IndexOutOfRange.
Poly generic_trace_word(const Word& w, Side side, CoefficientRing ring = CoefficientRing::integers());
Poly generic_det(int k, Side side, CoefficientRing ring = CoefficientRing::integers());

}  // namespace matinv2
