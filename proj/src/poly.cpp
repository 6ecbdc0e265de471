#include "matinv2/poly.hpp"

#include <charconv>
#include <sstream>

namespace matinv2 {

int var_index(Side side, int entry) {
  if (entry < 1 || entry > 16) throw Error(ErrorKind::kIndexOutOfRange, "entry " + std::to_string(entry));
  return (side == Side::kA ? 0 : 16) + entry - 1;
}

int parse_var(std::string_view name) {
  if (name.size() < 2 || (name[0] != 'a' && name[0] != 'b')) {
    throw Error(ErrorKind::kParse, "unknown variable '" + std::string(name) + "'");
  }
  int entry = 0;
  const auto digits = name.substr(1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), entry);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || entry < 1 || entry > 16 ||
      digits.front() == '0') {
    throw Error(ErrorKind::kParse, "unknown variable '" + std::string(name) + "'");
  }
  return var_index(name[0] == 'a' ? Side::kA : Side::kB, entry);
}

std::string var_name(int var) {
  return std::string(var < 16 ? "a" : "b") + std::to_string(var % 16 + 1);
}

std::string to_string(const CoefficientRing& ring) {
  return ring.modulus == 0 ? "Z" : "F" + std::to_string(ring.modulus);
}

CoefficientRing parse_ring(std::string_view text) {
  if (text == "Z") return CoefficientRing::integers();
  if (text.size() > 1 && text.front() == 'F') {
    std::uint64_t p = 0;
    const auto digits = text.substr(1);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && is_prime(p) && p < (1u << 31)) {
      return CoefficientRing::mod(p);
    }
  }
  throw Error(ErrorKind::kParse, "unknown coefficient ring '" + std::string(text) + "'");
}

int Monomial::total_degree() const {
  int sum = 0;
  for (auto e : exponents) sum += e;
  return sum;
}

bool GrlexLess::operator()(const Monomial& lhs, const Monomial& rhs) const {
  const int dl = lhs.total_degree();
  const int dr = rhs.total_degree();
  if (dl != dr) return dl < dr;
  // Lex with a1 the largest variable: the first differing exponent decides.
  for (int v = 0; v < kNumVars; ++v) {
    if (lhs.exponents[v] != rhs.exponents[v]) return lhs.exponents[v] < rhs.exponents[v];
  }
  return false;
}

// ---------------------------------------------------------------------------

Poly Poly::constant(CoefficientRing ring, const mpz_class& c) {
  Poly p(ring);
  p.add_term(Monomial{}, c);
  return p;
}

Poly Poly::variable(CoefficientRing ring, int var) {
  if (var < 0 || var >= kNumVars) throw Error(ErrorKind::kIndexOutOfRange, "variable index");
  Poly p(ring);
  Monomial m;
  m.exponents[var] = 1;
  p.add_term(m, 1);
  return p;
}

void Poly::normalize(mpz_class& c) const {
  if (ring_.modulus == 0) return;
  c %= static_cast<unsigned long>(ring_.modulus);
  if (c < 0) c += static_cast<unsigned long>(ring_.modulus);
}

void Poly::add_term(const Monomial& m, const mpz_class& c) {
  mpz_class value = c;
  normalize(value);
  if (value == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, value);
  if (inserted) return;
  it->second += value;
  normalize(it->second);
  if (it->second == 0) terms_.erase(it);
}

void Poly::check_ring(const Poly& rhs) const {
  if (!(ring_ == rhs.ring_)) {
    throw Error(ErrorKind::kRingMismatch, matinv2::to_string(ring_) + " vs " + matinv2::to_string(rhs.ring_));
  }
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
}

int Poly::total_degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.total_degree();
}

int Poly::degree_in(int var) const {
  int deg = 0;
  for (const auto& [m, c] : terms_) deg = std::max(deg, static_cast<int>(m.exponents[var]));
  return deg;
}

Poly Poly::reduce(CoefficientRing target) const {
  if (target == ring_) return *this;
  if (ring_.modulus != 0) {
    throw Error(ErrorKind::kRingMismatch, "cannot lift " + matinv2::to_string(ring_) + " coefficients");
  }
  Poly out(target);
  for (const auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

Poly Poly::operator-() const {
  Poly out(ring_);
  for (const auto& [m, c] : terms_) out.add_term(m, -c);
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  check_ring(rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  check_ring(rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  lhs.check_ring(rhs);
  Poly out(lhs.ring_);
  for (const auto& [ml, cl] : lhs.terms_) {
    for (const auto& [mr, cr] : rhs.terms_) {
      Monomial m;
      for (int v = 0; v < kNumVars; ++v) {
        m.exponents[v] = static_cast<std::uint8_t>(ml.exponents[v] + mr.exponents[v]);
      }
      out.add_term(m, cl * cr);
    }
  }
  return out;
}

Poly operator*(const mpz_class& c, const Poly& p) {
  Poly out(p.ring_);
  for (const auto& [m, coeff] : p.terms_) out.add_term(m, c * coeff);
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (e != 0) {
    if ((e & 1) != 0) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

std::vector<Poly> Poly::coefficients_in(int var) const {
  std::vector<Poly> coeffs(static_cast<std::size_t>(degree_in(var)) + 1, Poly(ring_));
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest.exponents[var] = 0;
    coeffs[m.exponents[var]].add_term(rest, c);
  }
  return coeffs;
}

Poly Poly::substitute(int var, const Poly& value) const {
  return substitute_fraction(var, value, constant(ring_, 1));
}

Poly Poly::substitute_fraction(int var, const Poly& num, const Poly& den) const {
  check_ring(num);
  check_ring(den);
  const std::vector<Poly> coeffs = coefficients_in(var);
  const std::size_t deg = coeffs.size() - 1;
  // Homogenised Horner: P_deg = f_deg, P_j = P_{j+1} * num + f_j * den^(deg-j).
  Poly result = coeffs[deg];
  Poly den_power = constant(ring_, 1);
  for (std::size_t j = deg; j-- > 0;) {
    den_power = den_power * den;
    result = result * num + coeffs[j] * den_power;
  }
  return result;
}

FieldElement Poly::evaluate(std::span<const FieldElement> point) const {
  if (point.size() != kNumVars) {
    throw Error(ErrorKind::kDimensionMismatch, "evaluation point needs 32 values");
  }
  const Field field(point.front().spec());
  FieldElement sum = field.zero();
  for (const auto& [m, c] : terms_) {
    FieldElement term = field.from_integer(c);
    for (int v = 0; v < kNumVars; ++v) {
      if (m.exponents[v] != 0) term *= point[v].pow(m.exponents[v]);
    }
    sum += term;
  }
  return sum;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    mpz_class magnitude = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit_coefficient = magnitude == 1 && m.total_degree() > 0;
    if (!unit_coefficient) os << magnitude.get_str();
    bool first_factor = unit_coefficient;
    for (int v = 0; v < kNumVars; ++v) {
      if (m.exponents[v] == 0) continue;
      if (!first_factor) os << "*";
      first_factor = false;
      os << var_name(v);
      if (m.exponents[v] > 1) os << "^" << static_cast<int>(m.exponents[v]);
    }
  }
  return os.str();
}

bool operator==(const Poly& lhs, const Poly& rhs) {
  return lhs.ring_ == rhs.ring_ && lhs.terms_ == rhs.terms_;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

// ---------------------------------------------------------------------------

GenericMat2 generic_matrix(int k, Side side, CoefficientRing ring) {
  if (k < 1 || k > 4) throw Error(ErrorKind::kIndexOutOfRange, "generic matrix index " + std::to_string(k));
  const int base = 4 * (k - 1);
  return {Poly::variable(ring, var_index(side, base + 1)), Poly::variable(ring, var_index(side, base + 2)),
          Poly::variable(ring, var_index(side, base + 3)), Poly::variable(ring, var_index(side, base + 4))};
}

Poly generic_trace_word(const Word& w, Side side, CoefficientRing ring) {
  GenericMat2 product = generic_matrix(w.indices().front(), side, ring);
  for (std::size_t n = 1; n < w.indices().size(); ++n) {
    const GenericMat2 next = generic_matrix(w.indices()[n], side, ring);
    product = {product.e11 * next.e11 + product.e12 * next.e21,
               product.e11 * next.e12 + product.e12 * next.e22,
               product.e21 * next.e11 + product.e22 * next.e21,
               product.e21 * next.e12 + product.e22 * next.e22};
  }
  return product.e11 + product.e22;
}

Poly generic_det(int k, Side side, CoefficientRing ring) {
  const GenericMat2 m = generic_matrix(k, side, ring);
  return m.e11 * m.e22 - m.e12 * m.e21;
}

}  // namespace matinv2
