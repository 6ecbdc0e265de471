#include "matinv2/field.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace matinv2 {
namespace {

constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 62;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e != 0) {
    if ((e & 1) != 0) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

std::uint64_t gf_mul(std::uint64_t a, std::uint64_t b, unsigned k) {
  std::uint64_t product = 0;
  for (unsigned i = 0; i < k; ++i) {
    if (((b >> i) & 1) != 0) product ^= a << i;
  }
  const std::uint64_t modulus = gf2k_modulus(k);
  for (int bit = static_cast<int>(2 * k) - 2; bit >= static_cast<int>(k); --bit) {
    if (((product >> bit) & 1) != 0) product ^= modulus << (bit - static_cast<int>(k));
  }
  return product;
}

std::uint64_t gf_pow(std::uint64_t a, std::uint64_t e, unsigned k) {
  std::uint64_t result = 1;
  while (e != 0) {
    if ((e & 1) != 0) result = gf_mul(result, a, k);
    a = gf_mul(a, a, k);
    e >>= 1;
  }
  return result;
}

// Solves s^2 + s = c over GF(2^k) as a linear system over GF(2).
std::optional<std::uint64_t> solve_artin_schreier(std::uint64_t c, unsigned k) {
  // rows[i] holds equation i: bits 0..k-1 are coefficients, bit k is the rhs.
  std::array<std::uint64_t, 64> rows{};
  for (unsigned col = 0; col < k; ++col) {
    const std::uint64_t basis = std::uint64_t{1} << col;
    const std::uint64_t image = gf_mul(basis, basis, k) ^ basis;
    for (unsigned row = 0; row < k; ++row) {
      if (((image >> row) & 1) != 0) rows[row] |= basis;
    }
  }
  for (unsigned row = 0; row < k; ++row) {
    if (((c >> row) & 1) != 0) rows[row] |= std::uint64_t{1} << k;
  }
  std::array<int, 64> pivot_row_of_col;
  pivot_row_of_col.fill(-1);
  unsigned next = 0;
  for (unsigned col = 0; col < k && next < k; ++col) {
    unsigned pivot = next;
    while (pivot < k && ((rows[pivot] >> col) & 1) == 0) ++pivot;
    if (pivot == k) continue;
    std::swap(rows[pivot], rows[next]);
    for (unsigned row = 0; row < k; ++row) {
      if (row != next && ((rows[row] >> col) & 1) != 0) rows[row] ^= rows[next];
    }
    pivot_row_of_col[col] = static_cast<int>(next);
    ++next;
  }
  for (unsigned row = next; row < k; ++row) {
    if (((rows[row] >> k) & 1) != 0) return std::nullopt;
  }
  std::uint64_t s = 0;
  for (unsigned col = 0; col < k; ++col) {
    const int row = pivot_row_of_col[col];
    if (row >= 0 && ((rows[row] >> k) & 1) != 0) s |= std::uint64_t{1} << col;
  }
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
  return s;
}

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

mpz_class parse_integer(std::string_view s, std::string_view context) {
  if (!is_decimal_integer(s)) {
    throw Error(ErrorKind::kParse, "malformed integer '" + std::string(s) + "' in '" +
                                       std::string(context) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

std::uint64_t parse_unsigned(std::string_view s, std::string_view context) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::kParse, "malformed number in field spec '" + std::string(context) + "'");
  }
  return value;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

std::uint64_t FieldSpec::characteristic() const {
  switch (kind) {
    case FieldKind::kRational: return 0;
    case FieldKind::kPrime: return p;
    case FieldKind::kGf2k: return 2;
  }
  return 0;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit n.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t gf2k_modulus(unsigned k) {
  switch (k) {
    case 1: return 0b11;                        // t + 1
    case 2: return 0b111;                       // t^2 + t + 1
    case 4: return 0b10011;                     // t^4 + t + 1
    case 8: return 0x11D;                       // t^8 + t^4 + t^3 + t^2 + 1
    case 16: return 0x1002D;                    // t^16 + t^5 + t^3 + t^2 + 1
    default:
      throw Error(ErrorKind::kUnsupportedExtensionDegree,
                  "GF(2^" + std::to_string(k) + ") is not in the shipped table {1,2,4,8,16}");
  }
}

void validate(const FieldSpec& spec) {
  switch (spec.kind) {
    case FieldKind::kRational: return;
    case FieldKind::kPrime:
      if (spec.p >= kMaxPrime || !is_prime(spec.p)) {
        throw Error(ErrorKind::kNonPrimeModulus,
                    std::to_string(spec.p) + " is not a prime below 2^62");
      }
      return;
    case FieldKind::kGf2k: static_cast<void>(gf2k_modulus(spec.k)); return;
  }
}

std::string to_string(const FieldSpec& spec) {
  switch (spec.kind) {
    case FieldKind::kRational: return "Q";
    case FieldKind::kPrime: return "F" + std::to_string(spec.p);
    case FieldKind::kGf2k: return "GF(2^" + std::to_string(spec.k) + ")";
  }
  return "?";
}

FieldSpec parse_field_spec(std::string_view text) {
  const std::string s = lower(trim(text));
  FieldSpec spec;
  if (s == "q" || s == "rational") {
    spec = FieldSpec::rational();
  } else if (s.starts_with("prime:")) {
    spec = FieldSpec::prime(parse_unsigned(std::string_view(s).substr(6), text));
  } else if (s.starts_with("gf2k:")) {
    spec = FieldSpec::gf2k(static_cast<unsigned>(parse_unsigned(std::string_view(s).substr(5), text)));
  } else if (s.starts_with("gf(2^") && s.ends_with(")")) {
    spec = FieldSpec::gf2k(
        static_cast<unsigned>(parse_unsigned(std::string_view(s).substr(5, s.size() - 6), text)));
  } else if (s.starts_with("gf2^")) {
    spec = FieldSpec::gf2k(static_cast<unsigned>(parse_unsigned(std::string_view(s).substr(4), text)));
  } else if (s.size() > 1 && s.front() == 'f') {
    spec = FieldSpec::prime(parse_unsigned(std::string_view(s).substr(1), text));
  } else {
    throw Error(ErrorKind::kParse, "unknown field spec '" + std::string(text) + "'");
  }
  validate(spec);
  return spec;
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldSpec spec, std::uint64_t bits) : spec_(spec), value_(bits) {
  if (spec.kind == FieldKind::kRational) value_ = mpq_class(static_cast<unsigned long>(bits));
}

FieldElement::FieldElement(FieldSpec spec, mpq_class value) : spec_(spec), value_(std::move(value)) {
  if (spec.kind != FieldKind::kRational) {
    throw Error(ErrorKind::kFieldMismatch, "rational value for " + matinv2::to_string(spec));
  }
  std::get<mpq_class>(value_).canonicalize();
}

bool FieldElement::is_zero() const {
  if (spec_.kind == FieldKind::kRational) return sgn(rational()) == 0;
  return bits() == 0;
}

bool FieldElement::is_one() const {
  if (spec_.kind == FieldKind::kRational) return rational() == 1;
  return bits() == 1;
}

void FieldElement::check_same(const FieldElement& rhs) const {
  if (!(spec_ == rhs.spec_)) {
    throw Error(ErrorKind::kFieldMismatch,
                matinv2::to_string(spec_) + " vs " + matinv2::to_string(rhs.spec_));
  }
}

FieldElement FieldElement::operator-() const {
  switch (spec_.kind) {
    case FieldKind::kRational: return {spec_, mpq_class(-rational())};
    case FieldKind::kPrime: return {spec_, bits() == 0 ? 0 : spec_.p - bits()};
    case FieldKind::kGf2k: return *this;
  }
  return *this;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  check_same(rhs);
  switch (spec_.kind) {
    case FieldKind::kRational: std::get<mpq_class>(value_) += rhs.rational(); break;
    case FieldKind::kPrime: {
      std::uint64_t sum = bits() + rhs.bits();
      if (sum >= spec_.p) sum -= spec_.p;
      value_ = sum;
      break;
    }
    case FieldKind::kGf2k: value_ = bits() ^ rhs.bits(); break;
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) { return *this += -rhs; }

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  check_same(rhs);
  switch (spec_.kind) {
    case FieldKind::kRational: std::get<mpq_class>(value_) *= rhs.rational(); break;
    case FieldKind::kPrime: value_ = mul_mod(bits(), rhs.bits(), spec_.p); break;
    case FieldKind::kGf2k: value_ = gf_mul(bits(), rhs.bits(), spec_.k); break;
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) { return *this *= rhs.inv(); }

FieldElement FieldElement::inv() const {
  if (is_zero()) throw Error(ErrorKind::kDivisionByZero, "inverse of zero");
  switch (spec_.kind) {
    case FieldKind::kRational: return {spec_, mpq_class(1 / rational())};
    case FieldKind::kPrime: return {spec_, pow_mod(bits(), spec_.p - 2, spec_.p)};
    case FieldKind::kGf2k:
      return {spec_, gf_pow(bits(), (std::uint64_t{1} << spec_.k) - 2, spec_.k)};
  }
  return *this;
}

FieldElement FieldElement::pow(std::uint64_t exponent) const {
  FieldElement result = Field(spec_).one();
  FieldElement base = *this;
  while (exponent != 0) {
    if ((exponent & 1) != 0) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

std::string FieldElement::to_string() const {
  switch (spec_.kind) {
    case FieldKind::kRational: return rational().get_str(10);
    case FieldKind::kPrime: return std::to_string(bits());
    case FieldKind::kGf2k: {
      static constexpr char kHex[] = "0123456789abcdef";
      std::string digits;
      std::uint64_t v = bits();
      do {
        digits.push_back(kHex[v & 0xF]);
        v >>= 4;
      } while (v != 0);
      std::reverse(digits.begin(), digits.end());
      return "0x" + digits;
    }
  }
  return "?";
}

bool operator==(const FieldElement& lhs, const FieldElement& rhs) {
  return lhs.spec_ == rhs.spec_ && lhs.value_ == rhs.value_;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

bool representation_less(const FieldElement& lhs, const FieldElement& rhs) {
  if (lhs.spec().kind == FieldKind::kRational) return lhs.rational() < rhs.rational();
  return lhs.bits() < rhs.bits();
}

// ---------------------------------------------------------------------------

Field::Field(FieldSpec spec) : spec_(spec) { validate(spec_); }

FieldElement Field::zero() const { return {spec_, std::uint64_t{0}}; }

FieldElement Field::one() const { return {spec_, std::uint64_t{1}}; }

FieldElement Field::from_integer(long long n) const { return from_integer(mpz_class(static_cast<long>(n))); }

FieldElement Field::from_integer(const mpz_class& n) const {
  switch (spec_.kind) {
    case FieldKind::kRational: return {spec_, mpq_class(n)};
    case FieldKind::kPrime: {
      mpz_class r = n % mpz_class(static_cast<unsigned long>(spec_.p));
      if (r < 0) r += static_cast<unsigned long>(spec_.p);
      return {spec_, static_cast<std::uint64_t>(r.get_ui())};
    }
    case FieldKind::kGf2k: return {spec_, static_cast<std::uint64_t>(mpz_odd_p(n.get_mpz_t()) ? 1 : 0)};
  }
  return zero();
}

FieldElement Field::parse(std::string_view text) const {
  const std::string_view s = trim(text);
  switch (spec_.kind) {
    case FieldKind::kRational: {
      const auto slash = s.find('/');
      if (slash == std::string_view::npos) return from_integer(parse_integer(s, text));
      const mpz_class num = parse_integer(trim(s.substr(0, slash)), text);
      const std::string_view den_text = trim(s.substr(slash + 1));
      if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
        throw Error(ErrorKind::kParse, "signed denominator in '" + std::string(text) + "'");
      }
      const mpz_class den = parse_integer(den_text, text);
      if (den == 0) throw Error(ErrorKind::kParse, "zero denominator in '" + std::string(text) + "'");
      return {spec_, mpq_class(num, den)};
    }
    case FieldKind::kPrime: return from_integer(parse_integer(s, text));
    case FieldKind::kGf2k: {
      if (s.starts_with("0x") || s.starts_with("0X")) {
        const std::string_view hex = s.substr(2);
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), value, 16);
        if (hex.empty() || ec != std::errc() || ptr != hex.data() + hex.size()) {
          throw Error(ErrorKind::kParse, "malformed GF(2^k) literal '" + std::string(text) + "'");
        }
        if (spec_.k < 64 && (value >> spec_.k) != 0) {
          throw Error(ErrorKind::kParse, "'" + std::string(text) + "' has degree >= " +
                                             std::to_string(spec_.k));
        }
        return {spec_, value};
      }
      return from_integer(parse_integer(s, text));
    }
  }
  return zero();
}

// ---------------------------------------------------------------------------

std::optional<FieldElement> sqrt_in_field(const FieldElement& x) {
  const FieldSpec& spec = x.spec();
  if (x.is_zero()) return x;
  switch (spec.kind) {
    case FieldKind::kRational: {
      const mpq_class& q = x.rational();
      if (sgn(q) < 0) return std::nullopt;
      if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
        return std::nullopt;
      }
      mpz_class num, den;
      mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
      mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
      return FieldElement(spec, mpq_class(num, den));
    }
    case FieldKind::kGf2k:
      // Frobenius is a bijection; its inverse is x -> x^(2^(k-1)).
      return FieldElement(spec, gf_pow(x.bits(), std::uint64_t{1} << (spec.k - 1), spec.k));
    case FieldKind::kPrime: {
      const std::uint64_t p = spec.p;
      const std::uint64_t a = x.bits();
      if (p == 2) return x;
      if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
      // Tonelli-Shanks.
      std::uint64_t q = p - 1;
      unsigned s = 0;
      while ((q & 1) == 0) {
        q >>= 1;
        ++s;
      }
      std::uint64_t z = 2;
      while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
      unsigned m = s;
      std::uint64_t c = pow_mod(z, q, p);
      std::uint64_t t = pow_mod(a, q, p);
      std::uint64_t r = pow_mod(a, (q + 1) / 2, p);
      while (t != 1) {
        unsigned i = 0;
        std::uint64_t t2 = t;
        while (t2 != 1) {
          t2 = mul_mod(t2, t2, p);
          ++i;
        }
        std::uint64_t b = c;
        for (unsigned j = 0; j + 1 < m - i; ++j) b = mul_mod(b, b, p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
      }
      return FieldElement(spec, std::min(r, p - r));
    }
  }
  return std::nullopt;
}

std::optional<FieldElement> quadratic_root(const FieldElement& a, const FieldElement& b,
                                           const FieldElement& c) {
  if (a.is_zero()) throw Error(ErrorKind::kPreconditionViolated, "quadratic_root with a = 0");
  const Field field(a.spec());
  if (field.characteristic() != 2) {
    const FieldElement disc = b * b - field.from_integer(4) * a * c;
    const auto root = sqrt_in_field(disc);
    if (!root) return std::nullopt;
    return (-b + *root) / (field.from_integer(2) * a);
  }
  // Characteristic 2: t^2 + B t + C.
  const FieldElement bb = b / a;
  const FieldElement cc = c / a;
  std::optional<FieldElement> root;
  const bool prime_two = a.spec().kind == FieldKind::kPrime;
  if (prime_two || a.spec().k == 1) {
    for (std::uint64_t t : {0, 1}) {
      const FieldElement candidate(a.spec(), t);
      if ((candidate * candidate + bb * candidate + cc).is_zero()) return candidate;
    }
    return std::nullopt;
  }
  if (bb.is_zero()) {
    root = sqrt_in_field(cc);
  } else {
    const FieldElement target = cc / (bb * bb);
    const auto s = solve_artin_schreier(target.bits(), a.spec().k);
    if (!s) return std::nullopt;
    root = bb * FieldElement(a.spec(), *s);
  }
  const FieldElement other = bb + *root;
  return representation_less(other, *root) ? other : *root;
}

}  // namespace matinv2
