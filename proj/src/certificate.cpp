#include "matinv2/certificate.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#ifndef MATINV2_DEFAULT_CORPUS
#define MATINV2_DEFAULT_CORPUS "data/cases"
#endif

namespace matinv2 {
namespace {

const CoefficientRing kZ = CoefficientRing::integers();

Poly unit_product(const std::vector<Poly>& units, const std::vector<int>& powers, CoefficientRing ring) {
  Poly product = Poly::constant(ring, 1);
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (powers[i] > 0) product = product * units[i].reduce(ring).pow(static_cast<unsigned>(powers[i]));
  }
  return product;
}

std::vector<int> padded(std::vector<int> powers, std::size_t n) {
  powers.resize(std::max(powers.size(), n), 0);
  return powers;
}

UnitFraction reduce(const UnitFraction& f, CoefficientRing ring) { return {f.num.reduce(ring), f.unit_powers}; }

UnitFraction add(const UnitFraction& x, const UnitFraction& y, const std::vector<Poly>& units,
                 CoefficientRing ring) {
  const std::vector<int> px = padded(x.unit_powers, units.size());
  const std::vector<int> py = padded(y.unit_powers, units.size());
  std::vector<int> common(units.size());
  std::vector<int> lift_x(units.size());
  std::vector<int> lift_y(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    common[i] = std::max(px[i], py[i]);
    lift_x[i] = common[i] - px[i];
    lift_y[i] = common[i] - py[i];
  }
  return {x.num * unit_product(units, lift_x, ring) + y.num * unit_product(units, lift_y, ring), common};
}

UnitFraction multiply(const UnitFraction& x, const UnitFraction& y, std::size_t n_units) {
  std::vector<int> powers = padded(x.unit_powers, n_units);
  const std::vector<int> py = padded(y.unit_powers, n_units);
  for (std::size_t i = 0; i < n_units; ++i) powers[i] += py[i];
  return {x.num * y.num, powers};
}

UnitFraction apply_step(const UnitFraction& f, const ChainStep& step, const std::vector<Poly>& units,
                        CoefficientRing ring) {
  const int deg = f.num.degree_in(step.var);
  if (deg == 0) return f;
  const std::vector<int> step_powers = padded(step.value.unit_powers, units.size());
  const Poly den = unit_product(units, step_powers, ring);
  std::vector<int> powers = padded(f.unit_powers, units.size());
  for (std::size_t i = 0; i < units.size(); ++i) powers[i] += deg * step_powers[i];
  return {f.num.substitute_fraction(step.var, step.value.num.reduce(ring), den), powers};
}

// ---------------------------------------------------------------------------
// Expression grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | variable | 'Q' | 'T(' ints ')' | 'D(' int ')' | '(' expr ')'
// A divisor must be a declared unit, its negative, or a power of one.

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::vector<Poly>& units, bool allow_conditions,
             std::string context)
      : text_(text), units_(units), allow_conditions_(allow_conditions), context_(std::move(context)) {}

  UnitFraction parse() {
    UnitFraction value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(text_.substr(pos_)) + "'");
    return value;
  }

  const std::vector<ConditionId>& conditions() const { return conditions_; }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorKind::kParse, context_ + ": " + message);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) fail(std::string("expected '") + ch + "'");
  }

  std::string integer_token() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::string(text_.substr(start, pos_ - start));
  }

  int small_integer() {
    const std::string digits = integer_token();
    if (digits.size() > 6) fail("integer too large");
    return std::stoi(digits);
  }

  UnitFraction constant(long long c) const { return {Poly::constant(kZ, mpz_class(static_cast<long>(c))), {}}; }

  UnitFraction expr() {
    UnitFraction value = term();
    while (true) {
      if (accept('+')) {
        value = add(value, term(), units_, kZ);
      } else if (accept('-')) {
        UnitFraction rhs = term();
        rhs.num = -rhs.num;
        value = add(value, rhs, units_, kZ);
      } else {
        return value;
      }
    }
  }

  UnitFraction term() {
    UnitFraction value = unary();
    while (true) {
      if (accept('*')) {
        value = multiply(value, unary(), units_.size());
      } else if (accept('/')) {
        value = divide(value, unary());
      } else {
        return value;
      }
    }
  }

  UnitFraction divide(UnitFraction value, const UnitFraction& divisor) {
    const auto is_trivial = [](const std::vector<int>& powers) {
      return std::all_of(powers.begin(), powers.end(), [](int p) { return p == 0; });
    };
    if (!is_trivial(divisor.unit_powers)) {
      throw Error(ErrorKind::kIllegalDenominator, context_ + ": nested denominators");
    }
    const Poly& d = divisor.num;
    if (d == Poly::constant(kZ, 1)) return value;
    if (d == Poly::constant(kZ, -1)) return {-value.num, value.unit_powers};
    for (std::size_t i = 0; i < units_.size(); ++i) {
      const int unit_degree = units_[i].total_degree();
      if (unit_degree <= 0 || d.total_degree() % unit_degree != 0) continue;
      const int e = d.total_degree() / unit_degree;
      const Poly power = units_[i].pow(static_cast<unsigned>(e));
      const bool negated = d == -power;
      if (d == power || negated) {
        value.unit_powers = padded(value.unit_powers, units_.size());
        value.unit_powers[i] += e;
        if (negated) value.num = -value.num;
        return value;
      }
    }
    throw Error(ErrorKind::kIllegalDenominator, context_ + ": divisor " + d.to_string() +
                                                    " is not a declared unit");
  }

  UnitFraction unary() {
    if (accept('-')) {
      UnitFraction value = unary();
      value.num = -value.num;
      return value;
    }
    if (accept('+')) return unary();
    return power();
  }

  UnitFraction power() {
    UnitFraction base = primary();
    if (!accept('^')) return base;
    const int e = small_integer();
    UnitFraction result = constant(1);
    for (int n = 0; n < e; ++n) result = multiply(result, base, units_.size());
    return result;
  }

  UnitFraction condition(ConditionId id) {
    if (!allow_conditions_) fail("condition " + id.to_string() + " outside a target");
    if (std::find(conditions_.begin(), conditions_.end(), id) == conditions_.end()) conditions_.push_back(id);
    return {condition_poly(id), {}};
  }

  std::vector<int> index_list() {
    expect('(');
    std::vector<int> indices{small_integer()};
    while (accept(',')) indices.push_back(small_integer());
    expect(')');
    return indices;
  }

  UnitFraction primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      UnitFraction value = expr();
      expect(')');
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) != 0) {
      return {Poly::constant(kZ, mpz_class(integer_token(), 10)), {}};
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name.empty()) fail(std::string("unexpected '") + ch + "'");
    try {
      if (name == "Q") return condition(ConditionId::q());
      if (name == "T") return condition(ConditionId::trace(index_list()));
      if (name == "D") {
        const std::vector<int> indices = index_list();
        if (indices.size() != 1) fail("D takes one index");
        return condition(ConditionId::det(indices.front()));
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kPreconditionViolated) fail(e.what());
      throw;
    }
    return {Poly::variable(kZ, parse_var(name)), {}};
  }

  std::string_view text_;
  const std::vector<Poly>& units_;
  bool allow_conditions_;
  std::string context_;
  std::size_t pos_ = 0;
  std::vector<ConditionId> conditions_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
  return s;
}

struct RawCase {
  std::string id;
  std::string origin;
  std::optional<std::string> ring;
  std::vector<std::string> notes;
  std::vector<std::pair<int, std::string>> units;
  std::vector<std::tuple<int, std::string, std::string>> presets;  // line, var, expr
  std::vector<std::tuple<int, std::string, std::string>> subs;
  std::optional<std::pair<int, std::string>> target;
};

std::pair<std::string, std::string> split_assignment(std::string_view rest, const std::string& context) {
  const auto eq = rest.find('=');
  if (eq == std::string_view::npos) throw Error(ErrorKind::kParse, context + ": expected '='");
  return {std::string(trim(rest.substr(0, eq))), std::string(trim(rest.substr(eq + 1)))};
}

CaseSpec build_case(const RawCase& raw) {
  auto where = [&raw](int line) { return raw.origin + ":" + std::to_string(line) + " [" + raw.id + "]"; };
  CaseSpec spec;
  spec.id = raw.id;
  spec.notes = raw.notes;
  if (!raw.ring) throw Error(ErrorKind::kParse, raw.origin + " [" + raw.id + "]: missing ring");
  spec.ring = parse_ring(*raw.ring);
  if (!raw.target) throw Error(ErrorKind::kParse, raw.origin + " [" + raw.id + "]: missing target");

  const std::vector<Poly> none;
  for (const auto& [line, text] : raw.units) {
    UnitFraction u = ExprParser(text, none, false, where(line)).parse();
    if (u.num.is_constant()) throw Error(ErrorKind::kParse, where(line) + ": constant unit");
    spec.units.push_back(u.num);
  }
  auto parse_steps = [&](const auto& lines, std::vector<ChainStep>& out) {
    for (const auto& [line, var, text] : lines) {
      ChainStep step;
      step.var = parse_var(var);
      step.value = ExprParser(text, spec.units, false, where(line)).parse();
      step.value.unit_powers = padded(step.value.unit_powers, spec.units.size());
      out.push_back(std::move(step));
    }
  };
  parse_steps(raw.presets, spec.presets);
  parse_steps(raw.subs, spec.substitutions);

  const auto& [line, text] = *raw.target;
  const auto [lhs, rhs] = split_assignment(text, where(line));
  if (lhs != "Q") throw Error(ErrorKind::kParse, where(line) + ": target must read 'Q = ...'");
  ExprParser parser(rhs, spec.units, true, where(line));
  spec.target = parser.parse();
  spec.target.unit_powers = padded(spec.target.unit_powers, spec.units.size());
  spec.target_text = rhs;
  spec.target_conditions = parser.conditions();
  if (std::find(spec.target_conditions.begin(), spec.target_conditions.end(), ConditionId::q()) !=
      spec.target_conditions.end()) {
    throw Error(ErrorKind::kParse, where(line) + ": Q on the right-hand side");
  }
  static_cast<void>(normalized_chain(spec));
  return spec;
}

}  // namespace

// ---------------------------------------------------------------------------

Poly parse_poly(std::string_view text, CoefficientRing ring) {
  const std::vector<Poly> no_units;
  return ExprParser(text, no_units, false, "polynomial").parse().num.reduce(ring);
}

ConditionId ConditionId::trace(std::vector<int> indices) {
  if (indices.empty() || indices.size() > 4) {
    throw Error(ErrorKind::kPreconditionViolated, "trace condition needs 1..4 indices");
  }
  for (std::size_t n = 0; n < indices.size(); ++n) {
    if (indices[n] < 1 || indices[n] > 4 || (n > 0 && indices[n] <= indices[n - 1])) {
      throw Error(ErrorKind::kPreconditionViolated, "condition indices must increase within [1,4]");
    }
  }
  if (indices.size() == 4) return q();
  return {Tag::kTrace, std::move(indices)};
}

ConditionId ConditionId::det(int i) {
  if (i < 1 || i > 4) throw Error(ErrorKind::kPreconditionViolated, "D(i) needs i in [1,4]");
  return {Tag::kDet, {i}};
}

std::string ConditionId::to_string() const {
  if (tag == Tag::kQ) return "Q";
  std::string out = tag == Tag::kDet ? "D(" : "T(";
  for (std::size_t n = 0; n < indices.size(); ++n) {
    if (n > 0) out += ",";
    out += std::to_string(indices[n]);
  }
  return out + ")";
}

Poly condition_poly(const ConditionId& c) {
  switch (c.tag) {
    case ConditionId::Tag::kDet:
      return generic_det(c.indices.front(), Side::kA) - generic_det(c.indices.front(), Side::kB);
    case ConditionId::Tag::kTrace:
      return generic_trace_word(Word(c.indices), Side::kA) - generic_trace_word(Word(c.indices), Side::kB);
    case ConditionId::Tag::kQ: {
      const Word w({1, 2, 3, 4});
      return generic_trace_word(w, Side::kA) - generic_trace_word(w, Side::kB);
    }
  }
  return Poly();
}

// ---------------------------------------------------------------------------

std::vector<CaseSpec> parse_cases(std::string_view text, std::string_view origin) {
  std::vector<RawCase> raws;
  std::istringstream in{std::string(text)};
  std::string line_text;
  int line = 0;
  while (std::getline(in, line_text)) {
    ++line;
    std::string_view s = trim(line_text);
    if (s.empty() || s.front() == '#') continue;
    const auto space = s.find_first_of(" \t");
    const std::string_view keyword = s.substr(0, space);
    const std::string_view rest = space == std::string_view::npos ? std::string_view() : trim(s.substr(space));
    const std::string context = std::string(origin) + ":" + std::to_string(line);
    if (keyword == "case") {
      if (rest.empty()) throw Error(ErrorKind::kParse, context + ": case without id");
      raws.emplace_back();
      raws.back().id = std::string(rest);
      raws.back().origin = std::string(origin);
      continue;
    }
    if (raws.empty()) throw Error(ErrorKind::kParse, context + ": declaration before 'case'");
    RawCase& raw = raws.back();
    if (keyword == "ring") {
      raw.ring = std::string(rest);
    } else if (keyword == "note") {
      raw.notes.emplace_back(rest);
    } else if (keyword == "unit") {
      raw.units.emplace_back(line, std::string(rest));
    } else if (keyword == "preset" || keyword == "sub") {
      auto [var, expr] = split_assignment(rest, context);
      (keyword == "preset" ? raw.presets : raw.subs).emplace_back(line, var, expr);
    } else if (keyword == "target") {
      if (raw.target) throw Error(ErrorKind::kParse, context + ": second target");
      raw.target = std::make_pair(line, std::string(rest));
    } else {
      throw Error(ErrorKind::kParse, context + ": unknown declaration '" + std::string(keyword) + "'");
    }
  }
  std::vector<CaseSpec> cases;
  std::set<std::string> ids;
  for (const auto& raw : raws) {
    if (!ids.insert(raw.id).second) throw Error(ErrorKind::kParse, std::string(origin) + ": duplicate case " + raw.id);
    cases.push_back(build_case(raw));
  }
  return cases;
}

std::vector<CaseSpec> load_case_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_cases(buffer.str(), path.filename().string());
}

std::filesystem::path corpus_path() {
  if (const char* env = std::getenv("MATINV2_CORPUS"); env != nullptr && *env != '\0') return env;
  return MATINV2_DEFAULT_CORPUS;
}

std::vector<CaseSpec> load_corpus(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_directory(path, ec)) return load_case_file(path);
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".case") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorKind::kIo, "no .case files in " + path.string());
  std::vector<CaseSpec> suite;
  std::set<std::string> ids;
  for (const auto& file : files) {
    for (auto& spec : load_case_file(file)) {
      if (!ids.insert(spec.id).second) throw Error(ErrorKind::kParse, "duplicate case " + spec.id);
      suite.push_back(std::move(spec));
    }
  }
  return suite;
}

std::vector<CaseSpec> builtin_case_suite() { return load_corpus(corpus_path()); }

const CaseSpec& find_case(const std::vector<CaseSpec>& suite, std::string_view id) {
  for (const auto& spec : suite) {
    if (spec.id == id) return spec;
  }
  throw Error(ErrorKind::kPreconditionViolated, "unknown case '" + std::string(id) + "'");
}

std::vector<ChainStep> normalized_chain(const CaseSpec& spec) {
  std::vector<ChainStep> chain;
  auto malformed = [&spec](const std::string& message) {
    throw Error(ErrorKind::kMalformedChain, spec.id + ": " + message);
  };
  std::set<int> eliminated;
  for (const ChainStep& preset : spec.presets) {
    ChainStep step = preset;
    for (const ChainStep& earlier : chain) step.value = apply_step(step.value, earlier, spec.units, kZ);
    chain.push_back(std::move(step));
  }
  for (const ChainStep& sub : spec.substitutions) {
    ChainStep step = sub;
    for (std::size_t n = 0; n < spec.presets.size(); ++n) {
      step.value = apply_step(step.value, chain[n], spec.units, kZ);
    }
    chain.push_back(std::move(step));
  }
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const ChainStep& step = chain[k];
    if (!eliminated.insert(step.var).second) malformed(var_name(step.var) + " eliminated twice");
    for (int var : eliminated) {
      if (step.value.num.uses(var)) {
        malformed(var == step.var ? var_name(var) + " defined in terms of itself"
                                  : var_name(step.var) + " reintroduces eliminated " + var_name(var));
      }
    }
  }
  for (const Poly& unit : spec.units) {
    for (int var : eliminated) {
      if (unit.uses(var)) malformed("unit " + unit.to_string() + " uses eliminated " + var_name(var));
    }
  }
  return chain;
}

std::vector<int> free_variables(const CaseSpec& spec) {
  std::set<int> eliminated;
  for (const auto& step : normalized_chain(spec)) eliminated.insert(step.var);
  std::vector<int> out;
  for (int v = 0; v < kNumVars; ++v) {
    if (eliminated.count(v) == 0) out.push_back(v);
  }
  return out;
}

ChainResult substitute_chain(const UnitFraction& f, const CaseSpec& spec, CoefficientRing ring) {
  UnitFraction value = reduce(f, ring);
  value.unit_powers = padded(value.unit_powers, spec.units.size());
  const std::vector<ChainStep> chain = normalized_chain(spec);
  for (const ChainStep& step : chain) value = apply_step(value, step, spec.units, ring);
  return {value.num, unit_product(spec.units, value.unit_powers, ring), value.unit_powers};
}

ChainResult substitute_chain(const Poly& f, const CaseSpec& spec) {
  return substitute_chain(UnitFraction{f, {}}, spec, f.ring());
}

CertificateReport verify_case(const CaseSpec& spec, std::optional<CoefficientRing> ring) {
  const CoefficientRing r = ring.value_or(spec.ring);
  UnitFraction q{condition_poly(ConditionId::q()), {}};
  UnitFraction negated_target{-spec.target.num, spec.target.unit_powers};
  const UnitFraction delta = add(reduce(q, r), reduce(negated_target, r), spec.units, r);
  const ChainResult result = substitute_chain(delta, spec, r);
  CertificateReport report;
  report.id = spec.id;
  report.ring = r;
  report.passed = result.num.is_zero();
  report.residue = result.num;
  report.multiplier = result.den;
  report.chain_length = spec.presets.size() + spec.substitutions.size();
  return report;
}

CaseSpec mutate_target(const CaseSpec& spec, std::size_t n) {
  CaseSpec mutated = spec;
  UnitFraction bump{Poly::constant(kZ, 1), {}};
  if (!spec.target_conditions.empty()) {
    bump.num = condition_poly(spec.target_conditions.at(n % spec.target_conditions.size()));
  }
  mutated.target = add(spec.target, bump, spec.units, kZ);
  mutated.target_text = "(" + spec.target_text + ") + " +
                        (spec.target_conditions.empty() ? std::string("1") : spec.target_conditions[n % spec.target_conditions.size()].to_string());
  return mutated;
}

}  // namespace matinv2
