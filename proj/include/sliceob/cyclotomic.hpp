#pragma once

// Exact arithmetic in Q(zeta_n) and Z[zeta_n].
//
// Elements are stored in the power basis 1, z, ..., z^(phi(n)-1), z = e^(2 pi i/n),
// as an integer numerator vector over one positive common denominator.
// Every operation reduces modulo the n-th cyclotomic polynomial.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sliceob/errors.hpp"
#include "sliceob/numbers.hpp"

namespace sliceob {

inline long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

/// Integer polynomial, coefficients from the constant term upwards.
using IntPoly = std::vector<Integer>;

namespace detail {

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic divisor; the remainder must vanish.
inline IntPoly divide_monic(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {};
  IntPoly quot(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    Integer c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  trim(num);
  if (!num.empty())
    fail(ErrorCode::InternalDivisibilityFailure, "cyclotomic polynomial division left a remainder");
  return quot;
}

}  // namespace detail

/// Phi_n by exact division of x^n - 1 by Phi_d over the proper divisors d of n.
inline IntPoly cyclotomic_polynomial(long n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "cyclotomic_polynomial: n must be positive");
  static std::mutex mutex;
  static std::map<long, IntPoly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  IntPoly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) p = detail::divide_monic(std::move(p), cyclotomic_polynomial(d));
  std::lock_guard lock(mutex);
  cache.emplace(n, p);
  return p;
}

namespace detail {

// Reduced forms of z^j, 0 <= j < n, as sparse (basis index, coefficient) lists.
struct PowerTable {
  long conductor = 1;
  long phi = 1;
  std::vector<std::vector<std::pair<int, long>>> powers;
};

inline std::shared_ptr<const PowerTable> power_table(long n) {
  static std::mutex mutex;
  static std::map<long, std::shared_ptr<const PowerTable>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  const IntPoly phi_poly = cyclotomic_polynomial(n);
  auto table = std::make_shared<PowerTable>();
  table->conductor = n;
  table->phi = static_cast<long>(phi_poly.size()) - 1;
  const long phi = table->phi;
  std::vector<Integer> cur(phi);
  cur[0] = 1;
  for (long j = 0; j < n; ++j) {
    std::vector<std::pair<int, long>> sparse;
    for (long i = 0; i < phi; ++i) {
      if (cur[i] == 0) continue;
      if (!cur[i].fits_slong_p())
        fail(ErrorCode::InvalidArgument, "conductor too large for reduction table");
      sparse.emplace_back(static_cast<int>(i), cur[i].get_si());
    }
    table->powers.push_back(std::move(sparse));
    // multiply by x, then eliminate x^phi using the monic Phi_n
    Integer top = cur[phi - 1];
    for (long i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (long i = 0; i < phi; ++i) cur[i] -= top * phi_poly[i];
  }
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(n, std::move(table));
  return it->second;
}

}  // namespace detail

/// e^(2 pi i num/den), kept as a reduced fraction of a full turn in [0, 1).
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(long num, long den) {
    if (den <= 0) fail(ErrorCode::InvalidArgument, "root of unity needs a positive denominator");
    num = mod_floor(num, den);
    const long g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
    if (num_ == 0) den_ = 1;
  }

  static RootOfUnity one() { return {}; }
  static RootOfUnity minus_one() { return {1, 2}; }

  long num() const noexcept { return num_; }
  long den() const noexcept { return den_; }
  /// Multiplicative order; equals the reduced denominator.
  long order() const noexcept { return den_; }
  bool is_one() const noexcept { return num_ == 0; }
  bool is_real() const noexcept { return den_ <= 2; }

  RootOfUnity inverse() const { return {-num_, den_}; }
  RootOfUnity pow(long e) const {
    // (num*e) mod den without overflow for the small denominators in use
    const long r = mod_floor(static_cast<long>((static_cast<__int128>(num_) * e) % den_), den_);
    return {r, den_};
  }

  friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
    const long d = lcm_long(a.den_, b.den_);
    return {a.num_ * (d / a.den_) + b.num_ * (d / b.den_), d};
  }

  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
  friend auto operator<=>(const RootOfUnity& a, const RootOfUnity& b) {
    // order by angle
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs != rhs) return lhs < rhs ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.den_ <=> b.den_;
  }

  std::complex<double> to_complex() const {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num_) /
                               static_cast<double>(den_));
  }

  std::string to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  long num_ = 0;
  long den_ = 1;
};

class Cyclotomic {
 public:
  /// Zero of Q(zeta_1) = Q.
  Cyclotomic() : Cyclotomic(1) {}

  /// Zero of Q(zeta_n).
  explicit Cyclotomic(long conductor) {
    if (conductor < 1) fail(ErrorCode::InvalidArgument, "conductor must be positive");
    table_ = detail::power_table(conductor);
    num_.assign(table_->phi, Integer(0));
    den_ = 1;
  }

  static Cyclotomic rational(long conductor, const Rational& q) {
    Cyclotomic x(conductor);
    x.num_[0] = q.get_num();
    x.den_ = q.get_den();
    return x;
  }

  static Cyclotomic one(long conductor) { return rational(conductor, 1); }

  /// zeta_n^j for any integer j.
  static Cyclotomic zeta_power(long conductor, long j) {
    Cyclotomic x(conductor);
    for (auto [idx, v] : x.table_->powers[mod_floor(j, conductor)]) x.num_[idx] = v;
    return x;
  }

  static Cyclotomic root(long conductor, const RootOfUnity& z) {
    if (conductor % z.den() != 0)
      fail(ErrorCode::NotDivisor, "root of order " + std::to_string(z.den()) +
                                      " does not live in conductor " + std::to_string(conductor));
    return zeta_power(conductor, z.num() * (conductor / z.den()));
  }

  /// From power-basis coefficients; the vector must have length phi(n).
  static Cyclotomic from_coefficients(long conductor, const std::vector<Rational>& coeffs) {
    Cyclotomic x(conductor);
    if (static_cast<long>(coeffs.size()) != x.table_->phi)
      fail(ErrorCode::SizeMismatch, "expected " + std::to_string(x.table_->phi) +
                                        " coefficients for conductor " + std::to_string(conductor));
    Integer den = 1;
    for (const auto& c : coeffs) den = lcm(den, Integer(c.get_den()));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      x.num_[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
    x.den_ = den;
    x.normalize();
    return x;
  }

  /// From coefficients attached to arbitrary powers of zeta_n (index taken mod n).
  static Cyclotomic from_power_sums(long conductor, const std::vector<Integer>& by_power,
                                    const Integer& den = 1) {
    Cyclotomic x(conductor);
    const long n = conductor;
    for (std::size_t j = 0; j < by_power.size(); ++j) {
      if (by_power[j] == 0) continue;
      for (auto [idx, v] : x.table_->powers[j % n]) x.num_[idx] += by_power[j] * v;
    }
    x.den_ = den;
    x.normalize();
    return x;
  }

  long conductor() const noexcept { return table_->conductor; }
  long degree() const noexcept { return table_->phi; }

  std::vector<Rational> coefficients() const {
    std::vector<Rational> out;
    out.reserve(num_.size());
    for (const auto& c : num_) {
      Rational q(c, den_);
      q.canonicalize();
      out.push_back(q);
    }
    return out;
  }
  Rational coefficient(long j) const {
    Rational q(num_.at(j), den_);
    q.canonicalize();
    return q;
  }
  const std::vector<Integer>& numerators() const noexcept { return num_; }
  const Integer& denominator() const noexcept { return den_; }

  bool is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const Integer& c) { return c == 0; });
  }
  bool is_integral() const { return den_ == 1; }

  /// The rational value when every non-constant coefficient vanishes.
  std::optional<Rational> as_rational() const {
    for (std::size_t i = 1; i < num_.size(); ++i)
      if (num_[i] != 0) return std::nullopt;
    Rational q(num_[0], den_);
    q.canonicalize();
    return q;
  }

  /// Complex conjugation, zeta -> zeta^-1.
  Cyclotomic conj() const { return galois(-1); }

  /// The automorphism zeta -> zeta^a, gcd(a, n) = 1.
  Cyclotomic galois(long a) const {
    const long n = conductor();
    if (std::gcd(mod_floor(a, n), n) != 1 && n > 1)
      fail(ErrorCode::InvalidArgument, "galois exponent must be a unit mod the conductor");
    std::vector<Integer> by_power(n);
    for (std::size_t j = 0; j < num_.size(); ++j)
      if (num_[j] != 0) by_power[mod_floor(a * static_cast<long>(j), n)] += num_[j];
    return from_power_sums(n, by_power, den_);
  }

  /// Absolute norm to Q: the product of all Galois conjugates.
  Rational norm() const {
    Cyclotomic prod = *this;
    const long n = conductor();
    for (long a = 2; a < n; ++a)
      if (std::gcd(a, n) == 1) prod *= galois(a);
    auto q = prod.as_rational();
    if (!q) fail(ErrorCode::InternalDivisibilityFailure, "norm did not reduce to a rational");
    return *q;
  }

  Cyclotomic inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    Cyclotomic rest = one(conductor());
    const long n = conductor();
    for (long a = 2; a < n; ++a)
      if (std::gcd(a, n) == 1) rest *= galois(a);
    Cyclotomic full = rest * *this;
    auto nrm = full.as_rational();
    if (!nrm) fail(ErrorCode::InternalDivisibilityFailure, "norm did not reduce to a rational");
    return rest * rational(conductor(), 1 / *nrm);
  }

  /// Value at the embedding zeta -> e^(2 pi i a/n).
  std::complex<double> embed(long a = 1) const {
    const long n = conductor();
    std::complex<double> acc = 0;
    const double scale = 1.0 / den_.get_d();
    for (std::size_t j = 0; j < num_.size(); ++j) {
      if (num_[j] == 0) continue;
      acc += num_[j].get_d() * std::polar(1.0, 2.0 * std::numbers::pi *
                                                   static_cast<double>(mod_floor(a * static_cast<long>(j), n)) /
                                                   static_cast<double>(n));
    }
    return acc * scale;
  }

  /// Values at every complex embedding.
  std::vector<std::complex<double>> embeddings() const {
    std::vector<std::complex<double>> out;
    const long n = conductor();
    for (long a = 1; a <= n; ++a)
      if (std::gcd(a, n) == 1) out.push_back(embed(a));
    return out;
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    check_same(o);
    if (den_ == o.den_) {
      for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
    } else {
      for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ + o.num_[i] * den_;
      den_ *= o.den_;
    }
    normalize();
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this += -o; }

  Cyclotomic& operator*=(const Cyclotomic& o) {
    check_same(o);
    const long phi = table_->phi;
    const long n = table_->conductor;
    std::vector<Integer> prod(2 * phi - 1);
    for (long i = 0; i < phi; ++i) {
      if (num_[i] == 0) continue;
      for (long j = 0; j < phi; ++j)
        if (o.num_[j] != 0) prod[i + j] += num_[i] * o.num_[j];
    }
    std::vector<Integer> reduced(phi);
    for (long j = 0; j < 2 * phi - 1; ++j) {
      if (prod[j] == 0) continue;
      if (j < phi) {
        reduced[j] += prod[j];
        continue;
      }
      for (auto [idx, v] : table_->powers[j % n]) reduced[idx] += prod[j] * v;
    }
    num_ = std::move(reduced);
    den_ *= o.den_;
    normalize();
    return *this;
  }

  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.conductor() == b.conductor() && a.den_ == b.den_ && a.num_ == b.num_;
  }

  /// Total order used for canonical sorting (conductor, denominator, numerators).
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor() != b.conductor()) return a.conductor() < b.conductor();
    if (a.den_ != b.den_) return a.den_ < b.den_;
    return a.num_ < b.num_;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    const std::string z = "z" + std::to_string(conductor());
    for (std::size_t j = 0; j < num_.size(); ++j) {
      if (num_[j] == 0) continue;
      Rational c = coefficient(static_cast<long>(j));
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      Rational a = abs(c);
      if (j == 0) os << a.get_str();
      else {
        if (a != 1) os << a.get_str() << "*";
        os << z;
        if (j > 1) os << "^" << j;
      }
      first = false;
    }
    return first ? "0" : os.str();
  }

 private:
  void check_same(const Cyclotomic& o) const {
    if (conductor() != o.conductor())
      fail(ErrorCode::ConductorMismatch, "conductors " + std::to_string(conductor()) + " and " +
                                             std::to_string(o.conductor()) + " differ");
  }

  void normalize() {
    if (den_ == 1) return;
    if (den_ < 0) {
      den_ = -den_;
      for (auto& c : num_) c = -c;
    }
    Integer g = den_;
    for (const auto& c : num_) {
      if (g == 1) break;
      if (c != 0) g = gcd(g, c);
    }
    if (g != 1) {
      den_ /= g;
      for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
    if (is_zero()) den_ = 1;
  }

  std::shared_ptr<const detail::PowerTable> table_;
  std::vector<Integer> num_;
  Integer den_;
};

/// Quotient in Z[zeta_n]; throws NotDivisible unless a/b is an algebraic integer.
inline Cyclotomic exact_divide(const Cyclotomic& a, const Cyclotomic& b) {
  if (!a.is_integral() || !b.is_integral())
    fail(ErrorCode::InvalidArgument, "exact_divide expects elements of Z[zeta_n]");
  Cyclotomic q = a / b;
  if (!q.is_integral()) fail(ErrorCode::NotDivisible, "quotient is not integral");
  return q;
}

/// The same number written in conductor m, using zeta_n = zeta_m^(m/n).
inline Cyclotomic promote(const Cyclotomic& x, long m) {
  const long n = x.conductor();
  if (m < 1 || m % n != 0)
    fail(ErrorCode::NotDivisor, "conductor " + std::to_string(n) + " does not divide " +
                                    std::to_string(m));
  if (m == n) return x;
  const long step = m / n;
  std::vector<Integer> by_power(m);
  const auto& num = x.numerators();
  for (std::size_t j = 0; j < num.size(); ++j)
    if (num[j] != 0) by_power[static_cast<long>(j) * step] += num[j];
  return Cyclotomic::from_power_sums(m, by_power, x.denominator());
}

/// Expresses x in the smaller conductor `target` when x lies in the image of promote.
inline std::optional<Cyclotomic> try_demote(const Cyclotomic& x, long target) {
  const long n = x.conductor();
  if (target < 1 || n % target != 0)
    fail(ErrorCode::NotDivisor, "conductor " + std::to_string(target) + " does not divide " +
                                    std::to_string(n));
  if (target == n) return x;
  // Solve sum_j y_j promote(zeta_target^j) = x over Q by Gaussian elimination.
  const long rows = x.degree();
  const long cols = euler_phi(target);
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
  for (long j = 0; j < cols; ++j) {
    auto basis = promote(Cyclotomic::zeta_power(target, j), n).coefficients();
    for (long i = 0; i < rows; ++i) m[i][j] = basis[i];
  }
  auto rhs = x.coefficients();
  for (long i = 0; i < rows; ++i) m[i][cols] = rhs[i];
  long r = 0;
  std::vector<long> pivot_col;
  for (long c = 0; c < cols && r < rows; ++c) {
    long p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (long k = c; k <= cols; ++k) m[r][k] *= inv;
    for (long i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (long k = c; k <= cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (long i = r; i < rows; ++i)
    if (m[i][cols] != 0) return std::nullopt;
  std::vector<Rational> y(cols);
  for (long i = 0; i < r; ++i) y[pivot_col[i]] = m[i][cols];
  return Cyclotomic::from_coefficients(target, y);
}

/// Promotes both operands to the lcm of their conductors.
inline std::pair<Cyclotomic, Cyclotomic> to_common_conductor(const Cyclotomic& a,
                                                             const Cyclotomic& b) {
  const long m = lcm_long(a.conductor(), b.conductor());
  return {promote(a, m), promote(b, m)};
}

}  // namespace sliceob
