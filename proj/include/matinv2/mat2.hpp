#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "matinv2/field.hpp"

namespace matinv2 {

// 2x2 matrix over one exact field, entries stored row-major.
class Mat2 {
 public:
  Mat2(FieldElement e11, FieldElement e12, FieldElement e21, FieldElement e22);

  static Mat2 zero(const Field& field);
  static Mat2 identity(const Field& field);
  static Mat2 diag(const FieldElement& a, const FieldElement& b);
  // Matrix unit E_ij, 1-based.
  static Mat2 unit(const Field& field, int i, int j);
  static Mat2 from_integers(const Field& field, long long e11, long long e12, long long e21,
                            long long e22);

  const FieldSpec& spec() const { return entries_[0].spec(); }
  Field field() const { return Field(spec()); }

  // 1-based access, (i, j) in {1,2}^2.
  const FieldElement& operator()(int i, int j) const { return entries_[2 * (i - 1) + (j - 1)]; }
  const FieldElement& e11() const { return entries_[0]; }
  const FieldElement& e12() const { return entries_[1]; }
  const FieldElement& e21() const { return entries_[2]; }
  const FieldElement& e22() const { return entries_[3]; }

  FieldElement trace() const { return entries_[0] + entries_[3]; }
  FieldElement det() const { return entries_[0] * entries_[3] - entries_[1] * entries_[2]; }
  // Coefficients of the characteristic polynomial: (sigma_1, sigma_2) = (tr, det).
  std::pair<FieldElement, FieldElement> sigma() const { return {trace(), det()}; }

  bool is_zero() const;
  bool is_diagonal() const { return e12().is_zero() && e21().is_zero(); }
  bool is_scalar() const { return is_diagonal() && e11() == e22(); }

  // Throws SingularConjugator when det = 0.
  Mat2 inverse() const;

  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend Mat2 operator+(const Mat2& a, const Mat2& b);
  friend Mat2 operator-(const Mat2& a, const Mat2& b);
  friend Mat2 operator*(const FieldElement& s, const Mat2& a);
  friend bool operator==(const Mat2& a, const Mat2& b) = default;

  std::string to_string() const;

 private:
  std::array<FieldElement, 4> entries_;
};

// The result of mat2_algebra: product A*B plus the characteristic data of A.
struct Mat2AlgebraResult {
  Mat2 product;
  FieldElement trace;
  FieldElement det;
  std::pair<FieldElement, FieldElement> sigma;
};

// Throws FieldMismatch when A and B live over different fields.
Mat2AlgebraResult mat2_algebra(const Mat2& a, const Mat2& b);

// A point of H = M(2)^d.
class MatrixTuple {
 public:
  // Throws DimensionMismatch for an empty list, FieldMismatch for mixed fields.
  explicit MatrixTuple(std::vector<Mat2> mats);

  static MatrixTuple zero(const Field& field, int d);

  int d() const { return static_cast<int>(mats_.size()); }
  const FieldSpec& spec() const { return mats_.front().spec(); }
  Field field() const { return Field(spec()); }

  // 1-based.
  const Mat2& operator[](int i) const { return mats_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<Mat2>& mats() const { return mats_; }

  friend bool operator==(const MatrixTuple&, const MatrixTuple&) = default;

 private:
  std::vector<Mat2> mats_;
};

// The monomial X_{i1} ... X_{is}; indices are 1-based.
class Word {
 public:
  // Throws PreconditionViolated for an empty word or an index < 1.
  explicit Word(std::vector<int> indices);

  const std::vector<int>& indices() const { return indices_; }
  int degree() const { return static_cast<int>(indices_.size()); }
  // Occurrence count per index 1..d.
  std::vector<int> multidegree(int d) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<int> indices_;
};

// Returns g A g^-1. Throws SingularConjugator.
Mat2 conjugate(const Mat2& g, const Mat2& a);
// Entrywise g u g^-1.
MatrixTuple conjugate(const Mat2& g, const MatrixTuple& u);

// Left-to-right product A_{i1} ... A_{is}. Throws IndexOutOfRange.
Mat2 eval_word(const MatrixTuple& u, const Word& w);
Mat2 eval_word(const MatrixTuple& u, std::span<const int> indices);

// [[0,1],[1,0]]: swaps diagonal entries and exchanges the off-diagonal ones.
Mat2 swap_conjugator(const Field& field);

// For a Jordan block A1 = [[a,1],[0,a]] and A2 = [[p,q],[r,s]] with r != 0 or
// p != s, returns g = [[1,t],[0,1]] with g A1 g^-1 = A1 and (g A2 g^-1)_12 = 0,
// where r t^2 - (s - p) t - q = 0. Nothing when that quadratic has no root in
// the field. Throws PreconditionViolated when the hypotheses fail.
std::optional<Mat2> clear_conjugator(const Mat2& a1, const Mat2& a2);

enum class LeadingForm { kDiagonal, kJordan, kNeedsExtension };

std::string_view to_string(LeadingForm form);

struct Normalization {
  Mat2 g;
  MatrixTuple v;  // g u g^-1
  LeadingForm form;
};

// Conjugates u so that its first matrix is diagonal or a Jordan block
// [[c,1],[0,c]]. When the characteristic polynomial of u_1 does not split
// over the field, returns form = kNeedsExtension with g = I and v = u.
Normalization normalize_leading(const MatrixTuple& u);

}  // namespace matinv2
