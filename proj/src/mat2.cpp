#include "matinv2/mat2.hpp"

#include <sstream>

namespace matinv2 {

Mat2::Mat2(FieldElement e11, FieldElement e12, FieldElement e21, FieldElement e22)
    : entries_{std::move(e11), std::move(e12), std::move(e21), std::move(e22)} {
  for (const auto& e : entries_) {
    if (!(e.spec() == entries_[0].spec())) {
      throw Error(ErrorKind::kFieldMismatch, "Mat2 entries from different fields");
    }
  }
}

Mat2 Mat2::zero(const Field& field) {
  return {field.zero(), field.zero(), field.zero(), field.zero()};
}

Mat2 Mat2::identity(const Field& field) {
  return {field.one(), field.zero(), field.zero(), field.one()};
}

Mat2 Mat2::diag(const FieldElement& a, const FieldElement& b) {
  const Field field(a.spec());
  return {a, field.zero(), field.zero(), b};
}

Mat2 Mat2::unit(const Field& field, int i, int j) {
  if (i < 1 || i > 2 || j < 1 || j > 2) {
    throw Error(ErrorKind::kIndexOutOfRange, "matrix unit E" + std::to_string(i) + std::to_string(j));
  }
  return from_integers(field, i == 1 && j == 1, i == 1 && j == 2, i == 2 && j == 1, i == 2 && j == 2);
}

Mat2 Mat2::from_integers(const Field& field, long long e11, long long e12, long long e21,
                         long long e22) {
  return {field.from_integer(e11), field.from_integer(e12), field.from_integer(e21),
          field.from_integer(e22)};
}

bool Mat2::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

Mat2 Mat2::inverse() const {
  const FieldElement d = det();
  if (d.is_zero()) throw Error(ErrorKind::kSingularConjugator, "matrix " + to_string() + " is singular");
  const FieldElement s = d.inv();
  return {s * e22(), -(s * e12()), -(s * e21()), s * e11()};
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.e11() * b.e11() + a.e12() * b.e21(), a.e11() * b.e12() + a.e12() * b.e22(),
          a.e21() * b.e11() + a.e22() * b.e21(), a.e21() * b.e12() + a.e22() * b.e22()};
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.e11() + b.e11(), a.e12() + b.e12(), a.e21() + b.e21(), a.e22() + b.e22()};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.e11() - b.e11(), a.e12() - b.e12(), a.e21() - b.e21(), a.e22() - b.e22()};
}

Mat2 operator*(const FieldElement& s, const Mat2& a) {
  return {s * a.e11(), s * a.e12(), s * a.e21(), s * a.e22()};
}

std::string Mat2::to_string() const {
  std::ostringstream os;
  os << "[[" << e11() << "," << e12() << "],[" << e21() << "," << e22() << "]]";
  return os.str();
}

Mat2AlgebraResult mat2_algebra(const Mat2& a, const Mat2& b) {
  return {a * b, a.trace(), a.det(), a.sigma()};
}

// ---------------------------------------------------------------------------

MatrixTuple::MatrixTuple(std::vector<Mat2> mats) : mats_(std::move(mats)) {
  if (mats_.empty()) throw Error(ErrorKind::kDimensionMismatch, "a tuple needs d >= 1 matrices");
  for (const auto& m : mats_) {
    if (!(m.spec() == mats_.front().spec())) {
      throw Error(ErrorKind::kFieldMismatch, "tuple matrices from different fields");
    }
  }
}

MatrixTuple MatrixTuple::zero(const Field& field, int d) {
  if (d < 1) throw Error(ErrorKind::kDimensionMismatch, "a tuple needs d >= 1 matrices");
  return MatrixTuple(std::vector<Mat2>(static_cast<std::size_t>(d), Mat2::zero(field)));
}

Word::Word(std::vector<int> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw Error(ErrorKind::kPreconditionViolated, "empty word");
  for (int i : indices_) {
    if (i < 1) throw Error(ErrorKind::kIndexOutOfRange, "word index " + std::to_string(i));
  }
}

std::vector<int> Word::multidegree(int d) const {
  std::vector<int> counts(static_cast<std::size_t>(d), 0);
  for (int i : indices_) {
    if (i > d) throw Error(ErrorKind::kIndexOutOfRange, "word index " + std::to_string(i) + " > d");
    ++counts[static_cast<std::size_t>(i - 1)];
  }
  return counts;
}

// ---------------------------------------------------------------------------

Mat2 conjugate(const Mat2& g, const Mat2& a) { return g * a * g.inverse(); }

MatrixTuple conjugate(const Mat2& g, const MatrixTuple& u) {
  const Mat2 g_inv = g.inverse();
  std::vector<Mat2> mats;
  mats.reserve(u.mats().size());
  for (const auto& m : u.mats()) mats.push_back(g * m * g_inv);
  return MatrixTuple(std::move(mats));
}

Mat2 eval_word(const MatrixTuple& u, std::span<const int> indices) {
  if (indices.empty()) throw Error(ErrorKind::kPreconditionViolated, "empty word");
  auto at = [&u](int i) -> const Mat2& {
    if (i < 1 || i > u.d()) {
      throw Error(ErrorKind::kIndexOutOfRange,
                  "index " + std::to_string(i) + " outside [1, " + std::to_string(u.d()) + "]");
    }
    return u[i];
  };
  Mat2 product = at(indices.front());
  for (std::size_t n = 1; n < indices.size(); ++n) product = product * at(indices[n]);
  return product;
}

Mat2 eval_word(const MatrixTuple& u, const Word& w) { return eval_word(u, std::span<const int>(w.indices())); }

Mat2 swap_conjugator(const Field& field) { return Mat2::from_integers(field, 0, 1, 1, 0); }

std::optional<Mat2> clear_conjugator(const Mat2& a1, const Mat2& a2) {
  if (!(a1.spec() == a2.spec())) throw Error(ErrorKind::kFieldMismatch, "clear_conjugator");
  if (!(a1.e12().is_one() && a1.e21().is_zero() && a1.e11() == a1.e22())) {
    throw Error(ErrorKind::kPreconditionViolated, "A1 = " + a1.to_string() + " is not [[a,1],[0,a]]");
  }
  const FieldElement& alpha = a2.e11();
  const FieldElement& beta = a2.e12();
  const FieldElement& gamma = a2.e21();
  const FieldElement& delta = a2.e22();
  if (gamma.is_zero() && alpha == delta) {
    throw Error(ErrorKind::kPreconditionViolated,
                "A2 = " + a2.to_string() + " has (2,1)-entry 0 and equal diagonal");
  }
  // (g A2 g^-1)_12 = beta + (delta - alpha) t - gamma t^2.
  const FieldElement spread = delta - alpha;
  std::optional<FieldElement> t;
  if (gamma.is_zero()) {
    t = -beta / spread;
  } else {
    t = quadratic_root(gamma, -spread, -beta);
  }
  if (!t) return std::nullopt;
  const Field field(a1.spec());
  return Mat2(field.one(), *t, field.zero(), field.one());
}

std::string_view to_string(LeadingForm form) {
  switch (form) {
    case LeadingForm::kDiagonal: return "Diagonal";
    case LeadingForm::kJordan: return "Jordan";
    case LeadingForm::kNeedsExtension: return "NeedsExtension";
  }
  return "?";
}

Normalization normalize_leading(const MatrixTuple& u) {
  const Field field = u.field();
  const Mat2 identity = Mat2::identity(field);
  const Mat2& a = u[1];
  if (a.is_diagonal()) return {identity, u, LeadingForm::kDiagonal};

  const auto lambda = quadratic_root(field.one(), -a.trace(), a.det());
  if (!lambda) return {identity, u, LeadingForm::kNeedsExtension};
  const FieldElement mu = a.trace() - *lambda;

  auto build = [&](const Mat2& columns, LeadingForm form) {
    const Mat2 g = columns.inverse();
    return Normalization{g, conjugate(g, u), form};
  };

  if (!(mu == *lambda)) {
    // Eigenvector for eigenvalue x of a non-diagonal matrix.
    auto eigenvector = [&a](const FieldElement& x) -> std::pair<FieldElement, FieldElement> {
      if (!a.e12().is_zero()) return {a.e12(), x - a.e11()};
      return {x - a.e22(), a.e21()};
    };
    const auto [x1, y1] = eigenvector(*lambda);
    const auto [x2, y2] = eigenvector(mu);
    return build(Mat2(x1, x2, y1, y2), LeadingForm::kDiagonal);
  }

  // Repeated eigenvalue, non-scalar: columns (N w, w) with N = A - lambda I.
  const Mat2 n = a - Mat2::diag(*lambda, *lambda);
  const bool first = !(n.e11().is_zero() && n.e21().is_zero());
  const FieldElement w1 = first ? field.one() : field.zero();
  const FieldElement w2 = first ? field.zero() : field.one();
  const FieldElement v1 = n.e11() * w1 + n.e12() * w2;
  const FieldElement v2 = n.e21() * w1 + n.e22() * w2;
  return build(Mat2(v1, w1, v2, w2), LeadingForm::kJordan);
}

}  // namespace matinv2
