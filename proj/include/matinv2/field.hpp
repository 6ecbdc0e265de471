#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "matinv2/error.hpp"

namespace matinv2 {

enum class FieldKind { kRational, kPrime, kGf2k };

// Identifies one of the exact scalar fields: Q, F_p, or GF(2^k).
//
// Finite fields stand in for the infinite fields over which the invariant
// theory is stated. Polynomial identities checked over them hold over every
// commutative ring of the same characteristic, but statements of the form
// "agreement on a generating set implies agreement everywhere" are only
// theorems over infinite fields; over F_p and GF(2^k) they are read as
// statements about the finitely many evaluated generators.
struct FieldSpec {
  FieldKind kind = FieldKind::kRational;
  std::uint64_t p = 0;  // kind == kPrime
  unsigned k = 0;       // kind == kGf2k

  static FieldSpec rational() { return {}; }
  static FieldSpec prime(std::uint64_t modulus) { return {FieldKind::kPrime, modulus, 0}; }
  static FieldSpec gf2k(unsigned degree) { return {FieldKind::kGf2k, 0, degree}; }

  std::uint64_t characteristic() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Throws NonPrimeModulus / UnsupportedExtensionDegree.
void validate(const FieldSpec& spec);

// "Q", "F101", "GF(2^8)".
std::string to_string(const FieldSpec& spec);

// Accepts "Q", "rational", "F<p>", "prime:<p>", "GF(2^<k>)", "GF2^<k>",
// "gf2k:<k>" (case-insensitive prefixes).
FieldSpec parse_field_spec(std::string_view text);

bool is_prime(std::uint64_t n);

// Reduction polynomial for GF(2^k) as a bit mask including the leading term.
std::uint64_t gf2k_modulus(unsigned k);

class FieldElement {
 public:
  // Residue / polynomial bits for finite kinds; value must already be reduced.
  FieldElement(FieldSpec spec, std::uint64_t bits);
  FieldElement(FieldSpec spec, mpq_class value);

  const FieldSpec& spec() const { return spec_; }

  bool is_zero() const;
  bool is_one() const;

  // Valid only for the matching kind.
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint64_t bits() const { return std::get<std::uint64_t>(value_); }

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);

  friend FieldElement operator+(FieldElement lhs, const FieldElement& rhs) { return lhs += rhs; }
  friend FieldElement operator-(FieldElement lhs, const FieldElement& rhs) { return lhs -= rhs; }
  friend FieldElement operator*(FieldElement lhs, const FieldElement& rhs) { return lhs *= rhs; }
  friend FieldElement operator/(FieldElement lhs, const FieldElement& rhs) { return lhs /= rhs; }

  // Throws DivisionByZero for zero.
  FieldElement inv() const;
  FieldElement pow(std::uint64_t exponent) const;

  // Canonical text: "n" or "n/m" for Q, decimal residue for F_p, "0x.." for
  // GF(2^k).
  std::string to_string() const;

  friend bool operator==(const FieldElement& lhs, const FieldElement& rhs);

 private:
  void check_same(const FieldElement& rhs) const;

  FieldSpec spec_;
  std::variant<std::uint64_t, mpq_class> value_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

// Handle for creating elements of one field.
class Field {
 public:
  explicit Field(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  std::uint64_t characteristic() const { return spec_.characteristic(); }

  FieldElement zero() const;
  FieldElement one() const;
  // Image of an integer under the ring map Z -> field.
  FieldElement from_integer(long long n) const;
  FieldElement from_integer(const mpz_class& n) const;
  // Throws Parse on malformed text or a zero denominator.
  FieldElement parse(std::string_view text) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  FieldSpec spec_;
};

// Square root with a deterministic choice of root:
//   Q: the non-negative root; F_p: min(r, p - r); GF(2^k): the unique root.
std::optional<FieldElement> sqrt_in_field(const FieldElement& x);

// A root of a*t^2 + b*t + c with a != 0, or nothing when the polynomial is
// irreducible over the field. Characteristic != 2 returns
// (-b + sqrt(b^2 - 4ac)) / 2a; characteristic 2 returns the root with the
// smaller bit representation.
std::optional<FieldElement> quadratic_root(const FieldElement& a, const FieldElement& b,
                                           const FieldElement& c);

// Total order on the canonical representation; used for deterministic choices.
bool representation_less(const FieldElement& lhs, const FieldElement& rhs);

}  // namespace matinv2
