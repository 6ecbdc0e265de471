// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "matinv2/cli.hpp"
#include "matinv2/selftest.hpp"
#include "matinv2/tuple_io.hpp"
#include "oracle.hpp"

using namespace matinv2;

namespace {

constexpr std::uint64_t kSeed = 20240917;
constexpr std::size_t kTheoremPairs = 10000;
constexpr std::size_t kConjugatePairs = 1000;
constexpr std::size_t kFamilyTarget = 500;
constexpr std::size_t kFamilyCap = 20000;
constexpr std::size_t kOtherFieldFamilyDraws = 300;
constexpr std::size_t kConjugatorInputs = 1000;
constexpr std::size_t kZeroSepInputs = 10000;
constexpr std::size_t kCraftedNilpotent = 1000;
constexpr std::size_t kInvarianceInputs = 10000;
constexpr double kCertificateSeconds = 10.0;
constexpr double kConfigSeconds = 60.0;

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

std::vector<FieldElement> all_elements(const Field& f) {
  std::vector<FieldElement> out;
  const FieldSpec& s = f.spec();
  const std::uint64_t n = s.kind == FieldKind::kPrime ? s.p : (std::uint64_t{1} << s.k);
  for (std::uint64_t i = 0; i < n; ++i) out.emplace_back(s, i);
  return out;
}

// ---------------------------------------------------------------------------
// 1

Verdict certificates(const std::vector<CaseSpec>& suite) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t passed = 0;
  for (const CaseSpec& c : suite) {
    const CertificateReport r = verify_case(c);
    if (r.passed) {
      ++passed;
    } else {
      v.pass = false;
      v.detail += " FAIL " + c.id + ";";
    }
  }
  const double elapsed = seconds_since(t0);
  for (const char* id : {"L4.2-b2zero", "L4.2-b2nonzero", "L4.3", "L4.4-1.1", "L4.4-1.2", "L4.4-2.1", "L4.4-2.2",
                         "L4.5-a", "L4.5-b", "L4.6-1", "L4.6-2-a6ne", "L4.6-2-a6eq"}) {
    try {
      const CaseSpec& c = find_case(suite, id);
      if (std::string_view(id).substr(0, 4) == "L4.6" && !(c.ring == CoefficientRing::mod(2))) {
        v.pass = false;
        v.detail += " " + std::string(id) + " not over F2;";
      }
    } catch (const Error&) {
      v.pass = false;
      v.detail += " missing " + std::string(id) + ";";
    }
  }
  std::size_t mutations = 0;
  std::size_t flipped = 0;
  for (const CaseSpec& c : suite) {
    const std::size_t n = std::max<std::size_t>(c.target_conditions.size(), 1);
    for (std::size_t i = 0; i < n; ++i) {
      ++mutations;
      if (!verify_case(mutate_target(c, i)).passed) {
        ++flipped;
      } else {
        v.pass = false;
        v.detail += " mutation survived " + c.id + ";";
      }
    }
  }
  if (suite.size() < 13 || elapsed >= kCertificateSeconds) v.pass = false;
  v.detail = std::to_string(passed) + "/" + std::to_string(suite.size()) + " cases pass in " + fmt_seconds(elapsed) +
             ", " + std::to_string(flipped) + "/" + std::to_string(mutations) + " mutations flip to FAIL" + v.detail;
  return v;
}

// ---------------------------------------------------------------------------
// 2

Verdict minimality() {
  Verdict v;
  std::size_t checks = 0;
  std::size_t expected = 0;
  for (const FieldSpec& spec : {FieldSpec::rational(), FieldSpec::prime(101), FieldSpec::gf2k(8)}) {
    const Field f(spec);
    for (int d = 1; d <= 6; ++d) {
      expected += static_cast<std::size_t>(2 * d + d * (d - 1) / 2 + d * (d - 1) * (d - 2) / 6);
      for (const InvariantDescriptor& desc : separating_set(d)) {
        const WitnessPair w = witness_for(desc, d, f);
        const std::vector<FieldElement> a = oracle::s_values(w.u);
        const std::vector<FieldElement> b = oracle::s_values(w.v);
        std::size_t differences = 0;
        for (std::size_t i = 0; i < a.size(); ++i) differences += a[i] != b[i] ? 1 : 0;
        if (check_witness(w, d) && differences == 1 && eval_invariant(desc, w.u) != eval_invariant(desc, w.v)) {
          ++checks;
        } else {
          v.pass = false;
          v.detail += " " + desc.to_string() + " d=" + std::to_string(d) + " " + to_string(spec) + ";";
        }
      }
    }
  }
  const Field q(FieldSpec::rational());
  const MatrixTuple e12_e21({Mat2::unit(q, 1, 2), Mat2::unit(q, 2, 1)});
  const MatrixTuple u3({Mat2::unit(q, 1, 1), Mat2::unit(q, 2, 1), Mat2::unit(q, 1, 2)});
  const MatrixTuple v3({Mat2::unit(q, 2, 2), Mat2::unit(q, 2, 1), Mat2::unit(q, 1, 2)});
  const FieldElement t12 = oracle::trace_word(e12_e21, {1, 2});
  const FieldElement t12_zero = oracle::trace_word(MatrixTuple::zero(q, 2), {1, 2});
  const FieldElement t123_u = oracle::trace_word(u3, {1, 2, 3});
  const FieldElement t123_v = oracle::trace_word(v3, {1, 2, 3});
  const bool values = t12 == q.one() && t12_zero == q.zero() && t123_u == q.zero() && t123_v == q.one() &&
                      witness_for(InvariantDescriptor::tr({1, 2, 3}), 3, q).u == u3 &&
                      witness_for(InvariantDescriptor::tr({1, 2, 3}), 3, q).v == v3;
  if (!values || checks != expected) v.pass = false;
  v.detail = std::to_string(checks) + "/" + std::to_string(expected) +
             " witness checks over Q, F101, GF(2^8); tr(X1X2)(E12,E21) = " + t12.to_string() + " vs " +
             t12_zero.to_string() + ", tr(X1X2X3) = " + t123_u.to_string() + " vs " + t123_v.to_string() + v.detail;
  return v;
}

// ---------------------------------------------------------------------------
// 3 and 4

using PairList = std::vector<std::pair<MatrixTuple, MatrixTuple>>;

struct FamilyRun {
  std::map<std::string, std::size_t> accepted;
  std::map<std::string, std::size_t> draws;
  std::size_t violations = 0;
  PairList pairs;
  double seconds = 0;
};

bool family_pair_ok(const MatrixTuple& u, const MatrixTuple& v) {
  const Prop4Result r = prop4_check(u, v);
  return r.hypothesis_holds && r.conclusion_holds && permuted_words_agree(u, v) &&
         oracle::s_values(u) == oracle::s_values(v) && oracle::generator_values(u) == oracle::generator_values(v) &&
         !oracle_separated(u, v).separated;
}

FamilyRun run_families(const std::vector<CaseSpec>& suite, const Field& f, std::size_t target, std::size_t cap) {
  FamilyRun run;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t c = 0; c < suite.size(); ++c) {
    const GuidedFamilySampler sampler(suite[c]);
    std::size_t accepted = 0;
    std::size_t draws = 0;
    while (accepted < target && draws < cap) {
      Rng rng = derive_rng(kSeed, 400 + c, (static_cast<std::uint64_t>(f.spec().p + f.spec().k) << 32) + draws);
      ++draws;
      const auto pair = nonseparated_family(suite[c], sampler.draw(f, rng));
      if (!pair) continue;
      ++accepted;
      if (!family_pair_ok(pair->first, pair->second)) ++run.violations;
      run.pairs.push_back(*pair);
    }
    run.accepted[suite[c].id] = accepted;
    run.draws[suite[c].id] = draws;
  }
  run.seconds = seconds_since(t0);
  return run;
}

Verdict prop4(const FamilyRun& run) {
  Verdict v;
  std::size_t lowest = kFamilyCap;
  std::string lowest_id;
  std::size_t total = 0;
  for (const auto& [id, n] : run.accepted) {
    total += n;
    if (n < lowest) {
      lowest = n;
      lowest_id = id;
    }
    if (n < kFamilyTarget) {
      v.pass = false;
      v.detail += " " + id + " only " + std::to_string(n) + " accepted;";
    }
  }
  std::ostringstream rates;
  for (const auto& [id, n] : run.accepted) rates << " " << id << "=" << n << "/" << run.draws.at(id);
  if (run.violations > 0) v.pass = false;
  v.detail = std::to_string(total) + " accepted pairs over F101 (sampled in " + fmt_seconds(run.seconds) + "), " + std::to_string(run.violations) +
             " violations, fewest " + std::to_string(lowest) + " (" + lowest_id + "); accepted/draws:" + rates.str() +
             v.detail;
  return v;
}

std::pair<MatrixTuple, MatrixTuple> theorem_input(std::size_t i, const Field& f, int d, Rng& rng,
                                                  const std::vector<GuidedFamilySampler>& samplers) {
  switch (i % 6) {
    case 0: return {random_tuple(f, d, rng), random_tuple(f, d, rng)};
    case 1: return conjugate_pair(random_tuple(f, d, rng), random_invertible(f, rng));
    case 2:
    case 3: {
      const MatrixTuple u = random_triangular(f, d, rng, false);
      std::vector<Mat2> w;
      for (const Mat2& m : u.mats()) {
        const FieldElement x = random_element(f, rng);
        w.push_back(i % 6 == 2 ? Mat2(m.e11(), x, f.zero(), m.e22()) : Mat2(m.e11(), f.zero(), x, m.e22()));
      }
      return {u, MatrixTuple(std::move(w))};
    }
    case 4: {
      auto sparse = [&] {
        std::vector<Mat2> mats;
        for (int k = 0; k < d; ++k) {
          mats.emplace_back(random_sparse_element(f, rng), random_sparse_element(f, rng),
                            random_sparse_element(f, rng), random_sparse_element(f, rng));
        }
        return MatrixTuple(std::move(mats));
      };
      return {sparse(), sparse()};
    }
    default: {
      const GuidedFamilySampler& s = samplers[(i / 6) % samplers.size()];
      for (int attempt = 0; attempt < 8; ++attempt) {
        if (auto pair = nonseparated_family(s.spec(), s.draw(f, rng))) return pad_pair(*pair, d, rng);
      }
      return conjugate_pair(random_tuple(f, d, rng), random_invertible(f, rng));
    }
  }
}

Verdict separating_property(const std::vector<CaseSpec>& suite, const std::map<std::uint64_t, FamilyRun>& families) {
  Verdict v;
  const std::vector<GuidedFamilySampler> samplers(suite.begin(), suite.end());
  std::size_t counterexamples = 0;
  std::size_t disagreements = 0;
  std::size_t instances = 0;
  std::size_t s_agreeing = 0;
  double slowest = 0;
  std::string slowest_config;
  for (const FieldSpec& spec : {FieldSpec::rational(), FieldSpec::prime(101), FieldSpec::gf2k(16)}) {
    const Field f(spec);
    for (int d : {4, 5, 6}) {
      const auto t0 = std::chrono::steady_clock::now();
      const Catalog s_set = separating_set(d);
      const Catalog g_set = generating_set(d, spec.characteristic());
      // Counterexample: S-agreeing, G-separated. Library verdicts must match
      // the reference values too.
      auto examine = [&](const MatrixTuple& a, const MatrixTuple& b, bool must_agree) {
        ++instances;
        const bool s_agree = oracle::s_values(a) == oracle::s_values(b);
        const bool g_agree = oracle::generator_values(a) == oracle::generator_values(b);
        if (s_agree) ++s_agreeing;
        if ((s_agree && !g_agree) || (must_agree && !g_agree)) ++counterexamples;
        if (separated_by(a, b, s_set).separated == s_agree || separated_by(a, b, g_set).separated == g_agree) {
          ++disagreements;
        }
      };
      for (std::size_t i = 0; i < kTheoremPairs; ++i) {
        Rng rng = derive_rng(kSeed, 300 + static_cast<std::uint64_t>(d), (spec.p + spec.k) * 1000003 + i);
        const auto [a, b] = theorem_input(i, f, d, rng, samplers);
        examine(a, b, false);
      }
      for (std::size_t i = 0; i < kConjugatePairs; ++i) {
        Rng rng = derive_rng(kSeed, 310 + static_cast<std::uint64_t>(d), (spec.p + spec.k) * 1000003 + i);
        const auto [a, b] = conjugate_pair(random_tuple(f, d, rng), random_invertible(f, rng));
        examine(a, b, true);
      }
      const FamilyRun& fam = families.at(spec.p + spec.k);
      Rng pad_rng = derive_rng(kSeed, 320 + static_cast<std::uint64_t>(d), spec.p + spec.k);
      for (const auto& pair : fam.pairs) {
        const auto [a, b] = pad_pair(pair, d, pad_rng);
        examine(a, b, true);
      }
      const double elapsed = seconds_since(t0);
      if (elapsed > slowest) {
        slowest = elapsed;
        slowest_config = to_string(spec) + " d=" + std::to_string(d);
      }
      if (elapsed >= kConfigSeconds) {
        v.pass = false;
        v.detail += " " + to_string(spec) + " d=" + std::to_string(d) + " took " + fmt_seconds(elapsed) + ";";
      }
    }
  }
  if (counterexamples > 0 || disagreements > 0) v.pass = false;
  v.detail = std::to_string(instances) + " pairs over 9 configurations (" + std::to_string(s_agreeing) +
             " S-agreeing), " + std::to_string(counterexamples) + " counterexamples, " + std::to_string(disagreements) +
             " library/reference disagreements, slowest " + slowest_config + " " + fmt_seconds(slowest) + v.detail;
  return v;
}

// ---------------------------------------------------------------------------
// 5

bool has_root_exhaustive(const Field& f, const Mat2& a2) {
  auto q = [&](const FieldElement& t) {
    return (a2.e21() * t * t - (a2.e22() - a2.e11()) * t - a2.e12()).is_zero();
  };
  const FieldSpec& s = f.spec();
  if (s.kind == FieldKind::kRational) {
    // Integer entries in [-3, 3]: any rational root is n/m with |n| <= 3, m <= 3.
    if (a2.e21().is_zero()) return true;
    for (long long n = -3; n <= 3; ++n) {
      for (long long m = 1; m <= 3; ++m) {
        if (q(f.from_integer(n) / f.from_integer(m))) return true;
      }
    }
    return false;
  }
  if (s.kind == FieldKind::kPrime && s.p > 65536) {
    if (a2.e21().is_zero()) return true;
    const FieldElement diff = a2.e22() - a2.e11();
    const FieldElement disc = diff * diff + f.from_integer(4) * a2.e21() * a2.e12();
    return disc.is_zero() || disc.pow((s.p - 1) / 2).is_one();
  }
  for (const FieldElement& t : all_elements(f)) {
    if (q(t)) return true;
  }
  return false;
}

Verdict lemma_operations() {
  Verdict v;
  std::size_t inputs = 0;
  std::size_t present = 0;
  std::size_t absent = 0;
  std::size_t exhaustive = 0;
  std::size_t failures = 0;
  const std::vector<FieldSpec> specs = {FieldSpec::rational(),   FieldSpec::prime(2),
                                        FieldSpec::prime(3),     FieldSpec::prime(7),
                                        FieldSpec::prime(101),   FieldSpec::prime(2305843009213693951ULL),
                                        FieldSpec::gf2k(8),      FieldSpec::gf2k(16)};
  for (std::size_t fi = 0; fi < specs.size(); ++fi) {
    const Field f(specs[fi]);
    const Mat2 swap = swap_conjugator(f);
    if (!(swap * swap == Mat2::identity(f))) ++failures;
    for (std::size_t i = 0; i < kConjugatorInputs; ++i) {
      Rng rng = derive_rng(kSeed, 500 + fi, i);
      ++inputs;
      const Mat2 a = random_mat2(f, rng);
      if (!(conjugate(swap, a) == Mat2(a.e22(), a.e21(), a.e12(), a.e11()))) ++failures;

      const FieldElement alpha = random_element(f, rng);
      const Mat2 a1(alpha, f.one(), f.zero(), alpha);
      Mat2 a2 = random_mat2(f, rng);
      while (a2.e21().is_zero() && a2.e11() == a2.e22()) a2 = random_mat2(f, rng);
      const std::optional<Mat2> g = clear_conjugator(a1, a2);
      const bool root = has_root_exhaustive(f, a2);
      if (specs[fi].kind != FieldKind::kRational && !(specs[fi].kind == FieldKind::kPrime && specs[fi].p > 65536)) {
        ++exhaustive;
      }
      if (g.has_value() != root) ++failures;
      if (!g) {
        ++absent;
        continue;
      }
      ++present;
      const Mat2 c = conjugate(*g, a2);
      const bool shape = g->e11().is_one() && g->e21().is_zero() && g->e22().is_one() &&
                         (*g) * a1 == a1 * (*g) && conjugate(*g, a1) == a1 && c.e12().is_zero() && c.e21() == a2.e21();
      if (!shape) ++failures;
    }
  }
  if (failures > 0) v.pass = false;
  v.detail = std::to_string(inputs) + " inputs over " + std::to_string(specs.size()) + " fields: " +
             std::to_string(present) + " cleared, " + std::to_string(absent) + " absent, " +
             std::to_string(exhaustive) + " cross-checked by exhaustive root search, " + std::to_string(failures) +
             " failures";
  return v;
}

// ---------------------------------------------------------------------------
// 6

MatrixTuple zero_sep_input(std::size_t i, const Field& f, int d, Rng& rng) {
  std::vector<Mat2> mats;
  switch (i % 5) {
    case 0: return random_tuple(f, d, rng);
    case 1: return conjugate(random_invertible(f, rng), random_triangular(f, d, rng, true));
    case 2:
      // Each matrix nilpotent on its own, with independent kernels.
      for (int k = 0; k < d; ++k) {
        mats.push_back(random_element(f, rng) * conjugate(random_invertible(f, rng), Mat2::unit(f, 1, 2)));
      }
      return MatrixTuple(std::move(mats));
    case 3: {
      const MatrixTuple t = random_triangular(f, d, rng, false);
      for (const Mat2& m : t.mats()) {
        const bool keep = std::uniform_int_distribution<int>(0, 3)(rng) == 0;
        mats.emplace_back(keep ? m.e11() : f.zero(), m.e12(), m.e21(), keep ? m.e22() : f.zero());
      }
      return conjugate(random_invertible(f, rng), MatrixTuple(std::move(mats)));
    }
    default:
      for (int k = 0; k < d; ++k) {
        mats.emplace_back(random_sparse_element(f, rng), random_sparse_element(f, rng), random_sparse_element(f, rng),
                          random_sparse_element(f, rng));
      }
      return MatrixTuple(std::move(mats));
  }
}

bool all_zero(const std::vector<FieldElement>& values) {
  return std::all_of(values.begin(), values.end(), [](const FieldElement& x) { return x.is_zero(); });
}

Verdict zero_separation() {
  Verdict v;
  std::size_t inputs = 0;
  std::size_t separated = 0;
  std::size_t mismatches = 0;
  std::size_t crafted_bad = 0;
  const std::vector<FieldSpec> specs = {FieldSpec::rational(), FieldSpec::prime(2), FieldSpec::prime(101),
                                        FieldSpec::gf2k(8), FieldSpec::gf2k(16)};
  for (std::size_t fi = 0; fi < specs.size(); ++fi) {
    const Field f(specs[fi]);
    for (std::size_t i = 0; i < kZeroSepInputs; ++i) {
      Rng rng = derive_rng(kSeed, 600 + fi, i);
      const int d = 1 + static_cast<int>(i % 5);
      const MatrixTuple u = zero_sep_input(i / 5, f, d, rng);
      const MatrixTuple zero = MatrixTuple::zero(f, d);
      ++inputs;
      const bool z_sep = separated_by(u, zero, zero_separating_set(d)).separated;
      const bool g_sep = !all_zero(oracle::generator_values(u));
      const bool g_lib = separated_by(u, zero, generating_set(d, specs[fi].characteristic())).separated;
      if (g_sep) ++separated;
      if (z_sep != g_sep || g_lib != g_sep) ++mismatches;
    }
    for (std::size_t i = 0; i < kCraftedNilpotent; ++i) {
      Rng rng = derive_rng(kSeed, 650 + fi, i);
      const int d = 1 + static_cast<int>(i % 5);
      const MatrixTuple u = random_triangular(f, d, rng, true);
      const MatrixTuple zero = MatrixTuple::zero(f, d);
      if (separated_by(u, zero, zero_separating_set(d)).separated ||
          separated_by(u, zero, generating_set(d, specs[fi].characteristic())).separated ||
          !all_zero(oracle::generator_values(u))) {
        ++crafted_bad;
      }
    }
  }
  if (mismatches > 0 || crafted_bad > 0) v.pass = false;
  v.detail = std::to_string(inputs) + " tuples over " + std::to_string(specs.size()) + " fields, d <= 5 (" +
             std::to_string(separated) + " separated from 0), " + std::to_string(mismatches) +
             " Z/G mismatches; " + std::to_string(kCraftedNilpotent * specs.size()) +
             " strictly upper-triangular tuples, " + std::to_string(crafted_bad) + " separated";
  return v;
}

// ---------------------------------------------------------------------------
// 7

std::string cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_command(args, out, err);
  return out.str();
}

Verdict infrastructure() {
  Verdict v;
  const std::vector<FieldSpec> specs = {FieldSpec::rational(), FieldSpec::prime(2), FieldSpec::prime(101),
                                        FieldSpec::prime(2305843009213693951ULL), FieldSpec::gf2k(8),
                                        FieldSpec::gf2k(16)};
  std::size_t invariance_bad = 0;
  for (std::size_t i = 0; i < kInvarianceInputs; ++i) {
    const FieldSpec& spec = specs[i % specs.size()];
    const Field f(spec);
    Rng rng = derive_rng(kSeed, 700, i);
    const int d = 1 + static_cast<int>((i / specs.size()) % 6);
    const MatrixTuple u = random_tuple(f, d, rng);
    const MatrixTuple w = conjugate(random_invertible(f, rng), u);
    for (const Catalog& set : {separating_set(d), generating_set(d, spec.characteristic()), zero_separating_set(d)}) {
      if (!(fingerprint(u, set) == fingerprint(w, set))) ++invariance_bad;
    }
  }

  std::size_t cayley_bad = 0;
  std::size_t axiom_bad = 0;
  for (std::size_t fi = 0; fi < specs.size(); ++fi) {
    const Field f(specs[fi]);
    for (std::size_t i = 0; i < 1000; ++i) {
      Rng rng = derive_rng(kSeed, 710 + fi, i);
      const Mat2 a = random_mat2(f, rng);
      if (!(a * a - a.trace() * a + a.det() * Mat2::identity(f)).is_zero()) ++cayley_bad;
      const FieldElement x = random_element(f, rng);
      const FieldElement y = random_element(f, rng);
      const FieldElement z = random_element(f, rng);
      bool ok = (x + y) + z == x + (y + z) && x * (y * z) == (x * y) * z && x + y == y + x && x * y == y * x &&
                x * (y + z) == x * y + x * z && x + f.zero() == x && x * f.one() == x && (x - x).is_zero() &&
                x + (-x) == f.zero() && (x - y) + y == x;
      if (!x.is_zero()) ok = ok && (x * x.inv()).is_one() && (y / x) * x == y;
      if (!ok) ++axiom_bad;
    }
  }

  std::size_t roundtrip_bad = 0;
  std::size_t documents = 0;
  for (const char* field : {"Q", "F101", "GF(2^8)"}) {
    for (int d = 1; d <= 4; ++d) {
      for (const InvariantDescriptor& desc : separating_set(d)) {
        int code = 0;
        const std::string text =
            cli({"witness", "--d", std::to_string(d), "--invariant", desc.to_string(), "--field", field}, code);
        ++documents;
        const TupleDocument doc = parse_tuple_document(text);
        const WitnessPair w = witness_for(desc, d, Field(parse_field_spec(field)));
        if (code != kExitOk || to_json(doc) != text || !(doc.tuple("u") == w.u) || !(doc.tuple("v") == w.v) ||
            !(doc.distinguishing && *doc.distinguishing == desc)) {
          ++roundtrip_bad;
        }
      }
    }
  }
  for (std::size_t fi = 0; fi < specs.size(); ++fi) {
    const Field f(specs[fi]);
    Rng rng = derive_rng(kSeed, 720 + fi, 0);
    for (int i = 0; i < 50; ++i) {
      TupleDocument doc;
      doc.field = specs[fi];
      doc.d = 1 + i % 6;
      std::vector<Mat2> mats;
      for (int k = 0; k < doc.d; ++k) {
        Mat2 m = random_mat2(f, rng);
        if (specs[fi].kind == FieldKind::kRational) m = Mat2(m.e11() / f.from_integer(1 + i % 7), m.e12(), m.e21(), m.e22());
        mats.push_back(m);
      }
      doc.tuples.emplace("u", MatrixTuple(std::move(mats)));
      ++documents;
      const std::string text = to_json(doc);
      const TupleDocument back = parse_tuple_document(text);
      if (!(back.tuples == doc.tuples) || to_json(back) != text) ++roundtrip_bad;
    }
  }

  int c1 = 0;
  int c2 = 0;
  int c3 = 0;
  const std::vector<std::string> args = {"selftest", "--seed", "11", "--iters", "30"};
  const std::string run1 = cli(args, c1);
  const std::string run2 = cli(args, c2);
  const std::string other = cli({"selftest", "--seed", "12", "--iters", "30"}, c3);
  const bool deterministic = run1 == run2 && c1 == kExitOk && c2 == kExitOk && c3 == kExitOk;

  if (invariance_bad || cayley_bad || axiom_bad || roundtrip_bad || !deterministic) v.pass = false;
  v.detail = std::to_string(kInvarianceInputs) + " conjugated tuples, " + std::to_string(invariance_bad) +
             " fingerprint changes; Cayley-Hamilton " + std::to_string(cayley_bad) + " failures; field axioms " +
             std::to_string(axiom_bad) + " failures; " + std::to_string(documents) + " documents, " +
             std::to_string(roundtrip_bad) + " round-trip failures; selftest reruns " +
             (deterministic ? "byte-identical" : "DIFFER") + " (" + std::to_string(run1.size()) + " bytes)";
  return v;
}

}  // namespace

int main() {
  const std::vector<CaseSpec> suite = builtin_case_suite();
  std::map<std::uint64_t, FamilyRun> families;
  families.emplace(101, run_families(suite, Field(FieldSpec::prime(101)), kFamilyTarget, kFamilyCap));
  families.emplace(0, run_families(suite, Field(FieldSpec::rational()), kOtherFieldFamilyDraws, kOtherFieldFamilyDraws));
  families.emplace(16, run_families(suite, Field(FieldSpec::gf2k(16)), kOtherFieldFamilyDraws, kOtherFieldFamilyDraws));

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"certificate suite", [&] { return certificates(suite); }},
      {"minimality certificate", minimality},
      {"separating property", [&] { return separating_property(suite, families); }},
      {"family property", [&] { return prop4(families.at(101)); }},
      {"conjugator operations", lemma_operations},
      {"0-separating set", zero_separation},
      {"infrastructure", infrastructure},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all = all && v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << ", "
              << fmt_seconds(seconds_since(t0)) << "): " << v.detail << std::endl;
  }
  std::cout << (all ? "acceptance PASS" : "acceptance FAIL") << std::endl;
  return all ? 0 : 1;
}
