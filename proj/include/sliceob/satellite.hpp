#pragma once

// Satellite torsion factor prod_i Delta_K(z_i) over the eigenvalues z_i of
// alpha(axis), and the Bing-double sliceness obstruction built on it.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sliceob/cyclotomic.hpp"
#include "sliceob/errors.hpp"
#include "sliceob/laurent.hpp"
#include "sliceob/matrix.hpp"
#include "sliceob/monomial.hpp"
#include "sliceob/normtest.hpp"
#include "sliceob/torsion.hpp"

namespace sliceob {

/// One-variable integer Laurent polynomial modulo +-t^l: stored with lowest
/// exponent 0 and a positive constant term.
class AlexanderPoly {
 public:
  AlexanderPoly() : coeffs_{Integer(1)} {}

  /// Coefficients c_0..c_d of c_0 + c_1 t + ... (any representative; normalized here).
  explicit AlexanderPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  static AlexanderPoly from_longs(const std::vector<long>& c) {
    std::vector<Integer> v;
    for (long x : c) v.emplace_back(x);
    return AlexanderPoly(std::move(v));
  }

  const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  /// Exact value at a root of unity, in conductor z.den().
  Cyclotomic evaluate(const RootOfUnity& z) const { return evaluate_in(z, z.den()); }

  Cyclotomic evaluate_in(const RootOfUnity& z, long conductor) const {
    Cyclotomic acc(conductor);
    for (int j = static_cast<int>(coeffs_.size()); j-- > 0;) {
      acc *= Cyclotomic::root(conductor, z);
      acc += Cyclotomic::rational(conductor, Rational(coeffs_[j]));
    }
    return acc;
  }

  std::string to_string() const {
    LaurentPoly<Rational> p(1);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) p.add_term({static_cast<int>(j)}, Rational(coeffs_[j]));
    return p.to_string();
  }

  friend bool operator==(const AlexanderPoly&, const AlexanderPoly&) = default;

 private:
  void normalize() {
    std::size_t lo = 0;
    while (lo < coeffs_.size() && coeffs_[lo] == 0) ++lo;
    if (lo == coeffs_.size()) fail(ErrorCode::InvalidArgument, "the Alexander polynomial cannot be zero");
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lo));
    while (coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.front() < 0)
      for (auto& c : coeffs_) c = -c;
  }

  std::vector<Integer> coeffs_;
};

inline Cyclotomic eval_at_root(const AlexanderPoly& delta, const RootOfUnity& z) { return delta.evaluate(z); }

/// Square integer matrix B of even size with det(B - B^t) = +-1.
struct KnotSeifertMatrix {
  IntMatrix b;

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (!b.is_square()) {
      out.push_back("Seifert matrix is not square");
      return out;
    }
    if (b.rows() % 2 != 0) out.push_back("Seifert matrix has odd size");
    IntMatrix skew(b.rows(), b.cols(), 0);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) skew(i, j) = b(i, j) - b(j, i);
    Integer d = integer_determinant(skew);
    if (d != 1 && d != -1) out.push_back("det(B - B^t) = " + d.get_str() + ", expected +-1");
    return out;
  }
};

/// Delta_K(t) = det(B^t - B t), normalized.
inline AlexanderPoly alexander_from_seifert(const KnotSeifertMatrix& s) {
  if (auto v = s.violations(); !v.empty()) fail(ErrorCode::InvalidSeifert, v.front());
  const std::size_t n = s.b.rows();
  LaurentMatrix<Rational> m(n, n, 1, Rational(1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j).add_term({0}, Rational(s.b(j, i)));
      m(i, j).add_term({1}, Rational(-s.b(i, j)));
    }
  const LaurentPoly<Rational> det = laurent_det(m);
  const int lo = det.trailing_term().first[0];
  const int hi = det.leading_term().first[0];
  std::vector<Integer> coeffs(hi - lo + 1);
  for (const auto& [e, c] : det.terms()) coeffs[e[0] - lo] = c.get_num();
  return AlexanderPoly(std::move(coeffs));
}

struct KnotEntry {
  std::string name;
  KnotSeifertMatrix seifert;
  AlexanderPoly alexander;
};

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n ? rows.begin()->size() : 0;
  IntMatrix out(n, m, 0);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) out(i, j++) = v;
    ++i;
  }
  return out;
}

/// Built-in companions: unknot, trefoil, figure-eight.
inline std::optional<KnotEntry> builtin_knot(const std::string& name) {
  if (name == "unknot")
    return KnotEntry{"unknot", {IntMatrix(0, 0, 0)}, AlexanderPoly()};
  if (name == "trefoil" || name == "3_1")
    return KnotEntry{"trefoil", {int_matrix({{-1, 1}, {0, -1}})}, AlexanderPoly::from_longs({1, -1, 1})};
  if (name == "fig8" || name == "figure-eight" || name == "4_1")
    return KnotEntry{"fig8", {int_matrix({{1, 1}, {0, -1}})}, AlexanderPoly::from_longs({1, -3, 1})};
  return std::nullopt;
}

enum class FactorStatus { Ok, RankJumps };

struct SatelliteFactor {
  FactorStatus status = FactorStatus::Ok;
  std::vector<RootOfUnity> eigenvalues;
  std::vector<Cyclotomic> values;      // Delta(z_i), each in conductor z_i.den()
  std::vector<RootOfUnity> vanishing;  // eigenvalues where Delta vanishes
  long conductor = 1;                  // lcm of eigenvalue orders and the base conductor
  Cyclotomic product;                  // prod Delta(z_i), in `conductor`
  Cyclotomic dense_check;              // det(Delta(alpha(axis))), promoted to `conductor`
};

/// det(sum_j c_j M^j) computed densely over the base conductor.
inline Cyclotomic dense_polynomial_determinant(const AlexanderPoly& delta, const MonomialMatrix& m, long conductor) {
  const std::size_t k = m.size();
  const Cyclotomic zero(conductor);
  Matrix<Cyclotomic> acc(k, k, zero);
  const Matrix<Cyclotomic> dense = m.dense(conductor);
  Matrix<Cyclotomic> power(k, k, zero);
  for (std::size_t i = 0; i < k; ++i) power(i, i) = Cyclotomic::one(conductor);
  for (const auto& c : delta.coefficients()) {
    const Cyclotomic cc = Cyclotomic::rational(conductor, Rational(c));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (!power(i, j).is_zero()) acc(i, j) += cc * power(i, j);
    power = multiply(power, dense, zero);
  }
  return field_determinant(acc, Cyclotomic::one(conductor));
}

/// prod Delta(z_i) over the eigenvalues of alpha(axis), cross-checked against
/// the dense determinant of Delta(alpha(axis)). When a psi is supplied the
/// axis must lie in its kernel.
inline SatelliteFactor satellite_factor(const MonomialRep& rep, const FreeWord& axis, const AlexanderPoly& delta,
                                        const PsiMap* psi = nullptr) {
  if (axis.max_generator() > rep.generator_count())
    fail(ErrorCode::DimensionMismatch, "axis word uses a generator outside the representation");
  if (psi) {
    Exponent image = psi->apply(axis.exponent_sums(psi->components()));
    for (int v : image)
      if (v != 0) fail(ErrorCode::InvalidArgument, "psi(axis) != 0");
  }
  SatelliteFactor out;
  const MonomialMatrix m = evaluate_word(rep, axis);
  out.eigenvalues = eigenvalues(m);
  long n = rep.conductor();
  for (const auto& z : out.eigenvalues) n = lcm_long(n, z.den());
  out.conductor = n;
  out.product = Cyclotomic::one(n);
  for (const auto& z : out.eigenvalues) {
    Cyclotomic v = eval_at_root(delta, z);
    if (v.is_zero()) out.vanishing.push_back(z);
    out.product *= promote(v, n);
    out.values.push_back(std::move(v));
  }
  out.dense_check = promote(dense_polynomial_determinant(delta, m, rep.conductor()), n);
  if (!(out.dense_check == out.product))
    fail(ErrorCode::CrossCheckMismatch, "eigenvalue product " + out.product.to_string() +
                                            " differs from the dense determinant " + out.dense_check.to_string());
  if (!out.vanishing.empty()) out.status = FactorStatus::RankJumps;
  return out;
}

enum class BingVerdict { NotSlice, Inconclusive, Unsupported };

inline std::string to_string(BingVerdict v) {
  switch (v) {
    case BingVerdict::NotSlice: return "NOT_SLICE";
    case BingVerdict::Inconclusive: return "INCONCLUSIVE";
    case BingVerdict::Unsupported: return "UNSUPPORTED";
  }
  return "INCONCLUSIVE";
}

struct BingResult {
  BingVerdict verdict = BingVerdict::Inconclusive;
  std::string reason;
  PGroupCertificate p_group;
  DetGroup det;
  SatelliteFactor factor;
  std::optional<Rational> rational_product;
  std::optional<NormVerdict> norm;
};

/// Sliceness obstruction for the Bing double of K: the axis is [x1, x2], so
/// psi(axis) = 0 for every psi, and slice forces prod Delta(z_i) = +-d q conj(q).
inline BingResult bing_double_obstruction(const AlexanderPoly& delta, const MonomialRep& rep, long p,
                                          std::size_t closure_budget = kDefaultClosureBudget,
                                          unsigned long trial_bound = kDefaultTrialDivisionBound) {
  if (rep.generator_count() != 2)
    fail(ErrorCode::DimensionMismatch, "a Bing double needs a representation on 2 generators");
  BingResult out;
  out.p_group = verify_p_group(rep, p, closure_budget);
  if (!out.p_group.is_p_group)
    fail(ErrorCode::NotPGroup, "representation does not factor through a " + std::to_string(p) + "-group");
  out.det = det_group(rep);
  out.factor = satellite_factor(rep, FreeWord::commutator(FreeWord::generator(1), FreeWord::generator(2)), delta);
  if (out.factor.status == FactorStatus::RankJumps) {
    out.verdict = BingVerdict::NotSlice;
    out.reason = "Delta_K vanishes at an eigenvalue of alpha([x1,x2]); a slice Bing double forbids this";
    return out;
  }
  out.rational_product = out.factor.product.as_rational();
  if (!out.rational_product) {
    out.verdict = BingVerdict::Inconclusive;
    out.reason = "the eigenvalue product is not rational";
    return out;
  }
  const Rational& x = *out.rational_product;
  if (x == 1 || x == -1) {
    out.verdict = BingVerdict::Inconclusive;
    out.reason = "the product " + x.get_str() + " is trivially of the form +-d q conj(q)";
    return out;
  }
  if (kNormConductor % rep.conductor() != 0) {
    out.verdict = BingVerdict::Unsupported;
    out.reason = "norm classes are only decided when the representation lives in Z[zeta_8]";
    return out;
  }
  // +-d with d real in det(alpha): the real units are always {+1, -1}
  out.norm = rational_norm_class(x, true, trial_bound);
  if (out.norm->status == Membership::NotMember) {
    out.verdict = BingVerdict::NotSlice;
    out.reason = "the product " + x.get_str() + " is not +-d q conj(q) in Q(zeta_8)";
  } else {
    out.verdict = BingVerdict::Inconclusive;
    out.reason = "the product " + x.get_str() + " is a norm";
  }
  return out;
}

}  // namespace sliceob
