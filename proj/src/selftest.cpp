#include "matinv2/selftest.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace matinv2 {
namespace {

enum Stream : std::uint64_t { kConjugation = 1, kTheorem = 2, kFamily = 3, kPadding = 4 };

std::vector<FieldSpec> fields_of(const SelftestOptions& opt) {
  if (opt.field) return {*opt.field};
  return {FieldSpec::rational(), FieldSpec::prime(101), FieldSpec::gf2k(16)};
}

std::vector<int> dims_of(const SelftestOptions& opt) {
  if (opt.d) return {*opt.d};
  return {4, 5, 6};
}

std::uint64_t config_stream(std::uint64_t suite, const FieldSpec& f, int d) {
  return suite << 48 ^ static_cast<std::uint64_t>(f.kind) << 40 ^ (f.p + f.k) << 8 ^ static_cast<std::uint64_t>(d);
}

bool never_separated(const MatrixTuple& u, const MatrixTuple& v) {
  const int d = u.d();
  const std::uint64_t ch = u.spec().characteristic();
  return !separated_by(u, v, separating_set(d)).separated && !separated_by(u, v, zero_separating_set(d)).separated &&
         (ch == 2 && d > kMaxCharTwoOracleDegree ? true : !separated_by(u, v, generating_set(d, ch)).separated);
}

std::string config_name(const FieldSpec& f, int d) { return to_string(f) + " d=" + std::to_string(d); }

// A pair for the theorem property; kinds cycle so every generator is used.
std::pair<MatrixTuple, MatrixTuple> adversarial_pair(std::size_t i, const Field& field, int d, Rng& rng,
                                                     const std::vector<GuidedFamilySampler>& samplers) {
  switch (i % 6) {
    case 0: return {random_tuple(field, d, rng), random_tuple(field, d, rng)};
    case 1: return conjugate_pair(random_tuple(field, d, rng), random_invertible(field, rng));
    case 2:
    case 3: {
      // Same diagonals, unrelated off-diagonal parts; kind 3 mirrors v into
      // lower-triangular form.
      const MatrixTuple u = random_triangular(field, d, rng, false);
      std::vector<Mat2> v;
      for (const Mat2& m : u.mats()) {
        const FieldElement x = random_element(field, rng);
        v.push_back(i % 6 == 2 ? Mat2(m.e11(), x, field.zero(), m.e22()) : Mat2(m.e11(), field.zero(), x, m.e22()));
      }
      return {u, MatrixTuple(std::move(v))};
    }
    case 4: {
      auto sparse = [&]() {
        std::vector<Mat2> mats;
        for (int k = 0; k < d; ++k) {
          mats.emplace_back(random_sparse_element(field, rng), random_sparse_element(field, rng),
                            random_sparse_element(field, rng), random_sparse_element(field, rng));
        }
        return MatrixTuple(std::move(mats));
      };
      return {sparse(), sparse()};
    }
    default: {
      const GuidedFamilySampler& sampler = samplers[(i / 6) % samplers.size()];
      for (int attempt = 0; attempt < 8; ++attempt) {
        if (auto pair = nonseparated_family(sampler.spec(), sampler.draw(field, rng))) return pad_pair(*pair, d, rng);
      }
      return conjugate_pair(random_tuple(field, d, rng), random_invertible(field, rng));
    }
  }
}

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (std::size_t i = next++; i < n; i = next++) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::pair<MatrixTuple, MatrixTuple> pad_pair(const std::pair<MatrixTuple, MatrixTuple>& pair, int d, Rng& rng) {
  const Field field = pair.first.field();
  std::vector<Mat2> u;
  std::vector<Mat2> v;
  for (int k = 1; k <= d; ++k) {
    if (k <= pair.first.d()) {
      u.push_back(pair.first[k]);
      v.push_back(pair.second[k]);
    } else {
      const FieldElement s = random_element(field, rng);
      u.push_back(Mat2::diag(s, s));
      v.push_back(Mat2::diag(s, s));
    }
  }
  return {MatrixTuple(std::move(u)), MatrixTuple(std::move(v))};
}

bool permuted_words_agree(const MatrixTuple& u, const MatrixTuple& v) {
  std::vector<int> order{1, 2, 3, 4};
  do {
    if (!(eval_word(u, order).trace() == eval_word(v, order).trace())) return false;
  } while (std::next_permutation(order.begin(), order.end()));
  return true;
}

std::string SuiteLine::to_string() const {
  std::ostringstream os;
  os << suite << " " << config << ": " << instances << " instances";
  if (suite == "theorem-property") os << ", " << accepted << " S-agreeing";
  if (suite == "prop4-family") os << ", " << accepted << " accepted";
  os << ", " << counterexamples << " counterexamples";
  return os.str();
}

std::vector<SuiteLine> conjugation_suite(const SelftestOptions& opt) {
  std::vector<SuiteLine> lines;
  for (const FieldSpec& spec : fields_of(opt)) {
    const Field field(spec);
    for (int d : dims_of(opt)) {
      std::vector<char> bad(opt.iters, 0);
      parallel_for(opt.iters, [&](std::size_t i) {
        Rng rng = derive_rng(opt.seed, config_stream(kConjugation, spec, d), i);
        const auto [u, v] = conjugate_pair(random_tuple(field, d, rng), random_invertible(field, rng));
        bad[i] = never_separated(u, v) ? 0 : 1;
      }, opt.threads);
      lines.push_back({"conjugation-invariance", config_name(spec, d), opt.iters, 0,
                       static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1))});
    }
  }
  return lines;
}

std::vector<SuiteLine> theorem_suite(const SelftestOptions& opt, const std::vector<CaseSpec>& cases) {
  std::vector<GuidedFamilySampler> samplers(cases.begin(), cases.end());
  std::vector<SuiteLine> lines;
  for (const FieldSpec& spec : fields_of(opt)) {
    const Field field(spec);
    for (int d : dims_of(opt)) {
      const Catalog s = separating_set(d);
      const Catalog g = generating_set(d, spec.characteristic());
      std::vector<char> agree(opt.iters, 0);
      std::vector<char> bad(opt.iters, 0);
      parallel_for(opt.iters, [&](std::size_t i) {
        Rng rng = derive_rng(opt.seed, config_stream(kTheorem, spec, d), i);
        const auto [u, v] = adversarial_pair(i, field, d, rng, samplers);
        const bool s_sep = separated_by(u, v, s).separated;
        const bool g_sep = separated_by(u, v, g).separated;
        agree[i] = s_sep ? 0 : 1;
        bad[i] = !s_sep && g_sep ? 1 : 0;
      }, opt.threads);
      lines.push_back({"theorem-property", config_name(spec, d), opt.iters,
                       static_cast<std::size_t>(std::count(agree.begin(), agree.end(), 1)),
                       static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1))});
    }
  }
  return lines;
}

std::vector<SuiteLine> family_suite(const SelftestOptions& opt, const std::vector<CaseSpec>& cases) {
  std::vector<SuiteLine> lines;
  for (const FieldSpec& spec : fields_of(opt)) {
    const Field field(spec);
    for (std::size_t c = 0; c < cases.size(); ++c) {
      const GuidedFamilySampler sampler(cases[c]);
      std::vector<char> accepted(opt.iters, 0);
      std::vector<char> bad(opt.iters, 0);
      parallel_for(opt.iters, [&](std::size_t i) {
        Rng rng = derive_rng(opt.seed, config_stream(kFamily, spec, static_cast<int>(c)), i);
        const auto pair = nonseparated_family(sampler.spec(), sampler.draw(field, rng));
        if (!pair) return;
        accepted[i] = 1;
        const Prop4Result r = prop4_check(pair->first, pair->second);
        const bool ok = r.hypothesis_holds && r.conclusion_holds && permuted_words_agree(pair->first, pair->second) &&
                        !oracle_separated(pair->first, pair->second).separated;
        bad[i] = ok ? 0 : 1;
      }, opt.threads);
      lines.push_back({"prop4-family", to_string(spec) + " " + cases[c].id, opt.iters,
                       static_cast<std::size_t>(std::count(accepted.begin(), accepted.end(), 1)),
                       static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1))});
    }
  }
  return lines;
}

std::vector<SuiteLine> run_selftest(const SelftestOptions& opt, const std::vector<CaseSpec>& cases) {
  std::vector<SuiteLine> lines = conjugation_suite(opt);
  for (auto& l : theorem_suite(opt, cases)) lines.push_back(std::move(l));
  for (auto& l : family_suite(opt, cases)) lines.push_back(std::move(l));
  return lines;
}

}  // namespace matinv2
