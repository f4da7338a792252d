#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sliceob/cyclotomic.hpp"
#include "sliceob/errors.hpp"
#include "sliceob/numbers.hpp"

namespace sliceob {

/// Coefficient-ring adaptor. Cyclotomic constants need a sample element to
/// know their conductor, so every constructor takes one.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static Rational zero_like(const Rational&) { return 0; }
  static Rational one_like(const Rational&) { return 1; }
  static Rational from_int(const Rational&, long v) { return v; }
  static Rational from_rational(const Rational&, const Rational& q) { return q; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational conj(const Rational& x) { return x; }
  static Rational inverse(const Rational& x) {
    if (x == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
    return 1 / x;
  }
  static std::optional<Rational> as_rational(const Rational& x) { return x; }
  static std::string to_string(const Rational& x) { return format_rational(x); }
};

template <>
struct CoeffTraits<Cyclotomic> {
  static Cyclotomic zero_like(const Cyclotomic& s) { return Cyclotomic(s.conductor()); }
  static Cyclotomic one_like(const Cyclotomic& s) { return Cyclotomic::one(s.conductor()); }
  static Cyclotomic from_int(const Cyclotomic& s, long v) {
    return Cyclotomic::rational(s.conductor(), v);
  }
  static Cyclotomic from_rational(const Cyclotomic& s, const Rational& q) {
    return Cyclotomic::rational(s.conductor(), q);
  }
  static bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
  static Cyclotomic conj(const Cyclotomic& x) { return x.conj(); }
  static Cyclotomic inverse(const Cyclotomic& x) { return x.inverse(); }
  static std::optional<Rational> as_rational(const Cyclotomic& x) { return x.as_rational(); }
  static std::string to_string(const Cyclotomic& x) { return x.to_string(); }
};

/// Row-major rectangular matrix of values.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  Matrix transposed() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.reserve(data_.size());
    for (std::size_t c = 0; c < cols_; ++c)
      for (std::size_t r = 0; r < rows_; ++r) t.data_.push_back((*this)(r, c));
    return t;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
  if (a.cols() != b.rows()) fail(ErrorCode::SizeMismatch, "matrix product shape mismatch");
  Matrix<T> out(a.rows(), b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (CoeffTraits<T>::is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

using IntMatrix = Matrix<long>;

/// Determinant over the coefficient field by Gaussian elimination.
/// `one` fixes the ring for the empty matrix.
template <class C>
C field_determinant(Matrix<C> m, const C& one) {
  using Tr = CoeffTraits<C>;
  if (!m.is_square()) fail(ErrorCode::SizeMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  C det = one;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && Tr::is_zero(m(p, k))) ++p;
    if (p == n) return Tr::zero_like(one);
    if (p != k) {
      m.swap_rows(p, k);
      det = -det;
    }
    det *= m(k, k);
    const C inv = Tr::inverse(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (Tr::is_zero(m(i, k))) continue;
      const C f = m(i, k) * inv;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

/// Rank over the coefficient field.
template <class C>
std::size_t field_rank(Matrix<C> m) {
  using Tr = CoeffTraits<C>;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && Tr::is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, rank);
    const C inv = Tr::inverse(m(rank, c));
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (Tr::is_zero(m(i, c))) continue;
      const C f = m(i, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

/// Integer determinant via exact rational elimination.
inline Integer integer_determinant(const IntMatrix& m) {
  Matrix<Rational> q(m.rows(), m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
  Rational d = field_determinant(q, Rational(1));
  return d.get_num();
}

/// Diagonal of the Smith normal form (the non-zero elementary divisors, in order).
inline std::vector<Integer> smith_invariants(const IntMatrix& input) {
  Matrix<Integer> m(input.rows(), input.cols(), Integer(0));
  for (std::size_t i = 0; i < input.rows(); ++i)
    for (std::size_t j = 0; j < input.cols(); ++j) m(i, j) = input(i, j);
  std::vector<Integer> divisors;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest non-zero entry of the trailing block as pivot
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m(i, j) != 0 && (pr == rows || abs(m(i, j)) < abs(m(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    m.swap_rows(t, pr);
    m.swap_cols(t, pc);
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        Integer q = m(i, t) / m(t, t);
        for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) {
          m.swap_rows(t, i);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        Integer q = m(t, j) / m(t, t);
        for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) {
          m.swap_cols(t, j);
          changed = true;
        }
      }
      if (changed) continue;
      // divisibility of the trailing block by the pivot
      std::size_t bad_r = rows, bad_c = cols;
      for (std::size_t i = t + 1; i < rows && bad_r == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            bad_r = i;
            bad_c = j;
            break;
          }
      if (bad_r == rows) break;
      for (std::size_t j = t; j < cols; ++j) m(t, j) += m(bad_r, j);
      (void)bad_c;
    }
    divisors.push_back(abs(m(t, t)));
  }
  return divisors;
}

}  // namespace sliceob
