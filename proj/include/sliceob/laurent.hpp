#pragma once

// Sparse multivariable Laurent polynomials over Q or Q(zeta_n), their
// fraction-field elements, the bar involution, and exact determinant and
// rank of matrices over the Laurent ring.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sliceob/cyclotomic.hpp"
#include "sliceob/errors.hpp"
#include "sliceob/matrix.hpp"

namespace sliceob {

using Exponent = std::vector<int>;

inline Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Exponent sub_exponents(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Exponent negate_exponent(const Exponent& a) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

template <class C>
class LaurentPoly {
 public:
  using Coeff = C;
  using Tr = CoeffTraits<C>;
  using Terms = std::map<Exponent, C>;  // lexicographic: t_1 most significant

  LaurentPoly() = default;
  explicit LaurentPoly(int nvars) : nvars_(nvars) {}

  static LaurentPoly constant(int nvars, const C& c) {
    return monomial(Exponent(nvars, 0), c);
  }
  static LaurentPoly monomial(const Exponent& e, const C& c) {
    LaurentPoly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
  }
  /// t_i (1-based) with coefficient `one`.
  static LaurentPoly variable(int nvars, int i, const C& one) {
    Exponent e(nvars, 0);
    e.at(i - 1) = 1;
    return monomial(e, one);
  }

  int nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  void add_term(const Exponent& e, const C& c) {
    if (static_cast<int>(e.size()) != nvars_)
      fail(ErrorCode::DimensionMismatch, "exponent vector of length " + std::to_string(e.size()) +
                                             " in a ring with " + std::to_string(nvars_) +
                                             " variables");
    if (Tr::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (Tr::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Lex-largest and lex-smallest terms; the polynomial must be non-zero.
  const std::pair<const Exponent, C>& leading_term() const { return *terms_.rbegin(); }
  const std::pair<const Exponent, C>& trailing_term() const { return *terms_.begin(); }

  /// Componentwise minimum exponent (zero vector for the zero polynomial).
  Exponent min_degrees() const {
    if (terms_.empty()) return Exponent(nvars_, 0);
    Exponent m = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
      for (int i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
    return m;
  }
  Exponent max_degrees() const {
    if (terms_.empty()) return Exponent(nvars_, 0);
    Exponent m = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
      for (int i = 0; i < nvars_; ++i) m[i] = std::max(m[i], e[i]);
    return m;
  }

  std::optional<std::pair<Exponent, C>> as_monomial() const {
    if (terms_.size() != 1) return std::nullopt;
    return std::pair<Exponent, C>(terms_.begin()->first, terms_.begin()->second);
  }

  /// The constant coefficient when the polynomial is a constant.
  std::optional<C> as_constant() const {
    if (terms_.empty()) return std::nullopt;
    auto m = as_monomial();
    if (!m || std::any_of(m->first.begin(), m->first.end(), [](int v) { return v != 0; }))
      return std::nullopt;
    return m->second;
  }

  /// Multiplication by t^e.
  LaurentPoly shifted(const Exponent& e) const {
    LaurentPoly r(nvars_);
    for (const auto& [ex, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), add_exponents(ex, e), c);
    return r;
  }

  LaurentPoly scaled(const C& s) const {
    LaurentPoly r(nvars_);
    if (Tr::is_zero(s)) return r;
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
  }

  /// t^e -> t^-e together with coefficient conjugation.
  LaurentPoly bar() const {
    LaurentPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(negate_exponent(e), Tr::conj(c));
    return r;
  }

  /// Value at t_i = point[i] (entries must be invertible where exponents are negative).
  C evaluate(const std::vector<C>& point, const C& zero) const {
    C acc = zero;
    for (const auto& [e, c] : terms_) {
      C term = c;
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        const C base = e[i] > 0 ? point[i] : Tr::inverse(point[i]);
        for (int k = 0; k < std::abs(e[i]); ++k) term *= base;
      }
      acc += term;
    }
    return acc;
  }

  /// Value at rational t_i = point[i] (all non-zero).
  C evaluate_rational(const std::vector<Rational>& point, const C& zero) const {
    C acc = zero;
    for (const auto& [e, c] : terms_) {
      Rational v = 1;
      for (int i = 0; i < nvars_; ++i) {
        Rational b = e[i] >= 0 ? point[i] : 1 / point[i];
        for (int k = 0; k < std::abs(e[i]); ++k) v *= b;
      }
      acc += c * Tr::from_rational(zero, v);
    }
    return acc;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_vars(b);
    LaurentPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(add_exponents(ea, eb), ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_ && (a.nvars_ == b.nvars_ || a.terms_.empty());
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << Tr::to_string(c) << ")";
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        os << "*t" << (i + 1);
        if (e[i] != 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

 private:
  void check_vars(const LaurentPoly& o) const {
    if (o.nvars_ != nvars_ && !o.terms_.empty() && !terms_.empty())
      fail(ErrorCode::DimensionMismatch, "Laurent polynomials in different numbers of variables");
  }

  int nvars_ = 0;
  Terms terms_;
};

/// Exact quotient f/g in the Laurent ring, or nullopt when g does not divide f.
/// Uses lex division; the quotient's exponents lie between
/// trailing(f) - trailing(g) and leading(f) - leading(g), which bounds the loop.
template <class C>
std::optional<LaurentPoly<C>> divide_exact(const LaurentPoly<C>& f, const LaurentPoly<C>& g) {
  using Tr = CoeffTraits<C>;
  if (g.is_zero()) fail(ErrorCode::DivisionByZero, "division by the zero polynomial");
  const int nv = g.nvars();
  LaurentPoly<C> q(nv);
  if (f.is_zero()) return q;
  const Exponent floor = sub_exponents(f.trailing_term().first, g.trailing_term().first);
  const auto& [g_lead_e, g_lead_c] = g.leading_term();
  const C g_lead_inv = Tr::inverse(g_lead_c);
  auto rem = f.terms();
  while (!rem.empty()) {
    const auto& [re, rc] = *rem.rbegin();
    Exponent qe = sub_exponents(re, g_lead_e);
    if (qe < floor) return std::nullopt;
    const C qc = rc * g_lead_inv;
    for (const auto& [ge, gc] : g.terms()) {
      Exponent e = add_exponents(qe, ge);
      C delta = qc * gc;
      auto [it, inserted] = rem.try_emplace(e, -delta);
      if (!inserted) {
        it->second -= delta;
        if (Tr::is_zero(it->second)) rem.erase(it);
      }
    }
    q.add_term(qe, qc);
  }
  return q;
}

/// An element num/den of the fraction field Q(H).
template <class C>
class RationalFunction {
 public:
  using Poly = LaurentPoly<C>;

  RationalFunction() = default;
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail(ErrorCode::DivisionByZero, "rational function with zero denominator");
  }

  const Poly& numerator() const noexcept { return num_; }
  const Poly& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  RationalFunction bar() const { return {num_.bar(), den_.bar()}; }

  RationalFunction inverse() const {
    if (num_.is_zero()) fail(ErrorCode::DivisionByZero, "inverse of the zero rational function");
    return {den_, num_};
  }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return a * b.inverse();
  }

  /// Equality in Q(H), by cross-multiplication.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  /// Cancels the denominator when it divides the numerator exactly.
  std::optional<Poly> as_laurent() const { return divide_exact(num_, den_); }

  /// Deterministic representative modulo monomials and sign: numerator and
  /// denominator are each shifted so their lex-smallest exponent is 0, and
  /// each is negated when that term's coefficient is a negative rational.
  RationalFunction canonical() const { return {normalize_unit(num_), normalize_unit(den_)}; }

  static Poly normalize_unit(const Poly& p) {
    if (p.is_zero()) return p;
    Poly q = p.shifted(negate_exponent(p.trailing_term().first));
    auto r = CoeffTraits<C>::as_rational(q.trailing_term().second);
    if (r && *r < 0) q = -q;
    return q;
  }

  std::string to_string() const { return "(" + num_.to_string() + ") / (" + den_.to_string() + ")"; }

 private:
  Poly num_;
  Poly den_;
};

/// Square or rectangular matrix over the Laurent ring in `nvars` variables;
/// `one` is the unit of the coefficient ring (it fixes the conductor).
template <class C>
struct LaurentMatrix {
  using Poly = LaurentPoly<C>;

  LaurentMatrix() = default;
  LaurentMatrix(std::size_t rows, std::size_t cols, int nvars, C one_)
      : nvars(nvars), one(std::move(one_)), entries(rows, cols, Poly(nvars)) {}

  std::size_t rows() const noexcept { return entries.rows(); }
  std::size_t cols() const noexcept { return entries.cols(); }
  Poly& operator()(std::size_t r, std::size_t c) { return entries(r, c); }
  const Poly& operator()(std::size_t r, std::size_t c) const { return entries(r, c); }

  LaurentMatrix transposed() const {
    LaurentMatrix t;
    t.nvars = nvars;
    t.one = one;
    t.entries = entries.transposed();
    return t;
  }

  /// Entrywise evaluation at non-zero rational t_i.
  Matrix<C> evaluate_rational(const std::vector<Rational>& point) const {
    const C zero = CoeffTraits<C>::zero_like(one);
    Matrix<C> m(rows(), cols(), zero);
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) m(i, j) = entries(i, j).evaluate_rational(point, zero);
    return m;
  }

  int nvars = 0;
  C one = CoeffTraits<C>::one_like(C{});
  Matrix<Poly> entries;
};

template <class C>
LaurentMatrix<C> laurent_multiply(const LaurentMatrix<C>& a, const LaurentMatrix<C>& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::SizeMismatch, "matrix product shape mismatch");
  LaurentMatrix<C> out(a.rows(), b.cols(), a.nvars, a.one);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

namespace detail {

template <class C>
void bareiss_divide(LaurentPoly<C>& entry, const LaurentPoly<C>& divisor) {
  auto q = divide_exact(entry, divisor);
  if (!q)
    fail(ErrorCode::InternalDivisibilityFailure, "Bareiss step produced a non-divisible entry");
  entry = std::move(*q);
}

}  // namespace detail

/// Determinant over the Laurent ring. Each row is first multiplied by a
/// monomial so that it is an honest polynomial, then fraction-free Bareiss
/// elimination runs with exact divisions, and the monomial is restored.
template <class C>
LaurentPoly<C> laurent_det(const LaurentMatrix<C>& input) {
  using Poly = LaurentPoly<C>;
  if (input.rows() != input.cols()) fail(ErrorCode::SizeMismatch, "determinant of a non-square matrix");
  const std::size_t n = input.rows();
  const int nv = input.nvars;
  Matrix<Poly> m = input.entries;
  Exponent shift(nv, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Exponent row_min(nv, 0);
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j).is_zero()) continue;
      Exponent e = m(i, j).min_degrees();
      if (!any) row_min = e;
      else
        for (int v = 0; v < nv; ++v) row_min[v] = std::min(row_min[v], e[v]);
      any = true;
    }
    if (!any) return Poly(nv);
    const Exponent back = negate_exponent(row_min);
    for (std::size_t j = 0; j < n; ++j) m(i, j) = m(i, j).shifted(back);
    shift = add_exponents(shift, row_min);
  }

  bool negate = false;
  Poly prev = Poly::constant(nv, input.one);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t i = k; i < n; ++i)
      if (!m(i, k).is_zero() && (pivot == n || m(i, k).term_count() < m(pivot, k).term_count()))
        pivot = i;
    if (pivot == n) return Poly(nv);
    if (pivot != k) {
      m.swap_rows(pivot, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly v = m(k, k) * m(i, j);
        if (!m(i, k).is_zero() && !m(k, j).is_zero()) v -= m(i, k) * m(k, j);
        if (k > 0) detail::bareiss_divide(v, prev);
        m(i, j) = std::move(v);
      }
      m(i, k) = Poly(nv);
    }
    prev = m(k, k);
  }
  Poly det = n == 0 ? Poly::constant(nv, input.one) : m(n - 1, n - 1);
  if (negate) det = -det;
  return det.shifted(shift);
}

namespace detail {

// Fraction-free elimination with full pivot search; returns the rank.
template <class C>
std::size_t bareiss_rank(Matrix<LaurentPoly<C>> m, int nv, const C& one) {
  using Poly = LaurentPoly<C>;
  const std::size_t rows = m.rows(), cols = m.cols();
  Poly prev = Poly::constant(nv, one);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (!m(i, j).is_zero() && (pr == rows || m(i, j).term_count() < m(pr, pc).term_count())) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    m.swap_rows(k, pr);
    m.swap_cols(k, pc);
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        Poly v = m(k, k) * m(i, j);
        if (!m(i, k).is_zero() && !m(k, j).is_zero()) v -= m(i, k) * m(k, j);
        if (k > 0) bareiss_divide(v, prev);
        m(i, j) = std::move(v);
      }
      m(i, k) = Poly(nv);
    }
    prev = m(k, k);
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Rank over the fraction field Q(H).
///
/// A specialization t_i -> q_i at non-zero rationals can only lower the rank,
/// so a full-rank specialization certifies full rank. Otherwise the answer
/// comes from fraction-free elimination with row and column pivoting.
template <class C>
std::size_t laurent_rank(const LaurentMatrix<C>& m) {
  const std::size_t full = std::min(m.rows(), m.cols());
  if (full == 0) return 0;
  static const long kPoints[][4] = {{2, 3, 5, 7}, {11, -13, 17, 19}, {-23, 29, 31, -37}};
  for (const auto& pt : kPoints) {
    std::vector<Rational> point;
    for (int v = 0; v < m.nvars; ++v) point.emplace_back(pt[v % 4] + 41 * (v / 4));
    if (field_rank(m.evaluate_rational(point)) == full) return full;
  }
  return detail::bareiss_rank(m.entries, m.nvars, m.one);
}

/// Certifies det(m) != 0 by an exact specialization, falling back to rank elimination.
template <class C>
bool laurent_det_nonzero(const LaurentMatrix<C>& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::SizeMismatch, "determinant of a non-square matrix");
  return laurent_rank(m) == m.rows();
}

}  // namespace sliceob
