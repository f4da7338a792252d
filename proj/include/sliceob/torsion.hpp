#pragma once

// Twisted torsion of boundary links from a boundary link Seifert matrix.
//
// For an m-component boundary link with Seifert matrix A = (A_ij), a
// monomial representation alpha of the free group F<x_1..x_m> and an
// admissible psi: Z^m -> H = Z^r, the torsion is
//   det((alpha (x) psi)(A^t - A T)) / prod_i det(I_k - alpha(x_i) psi(t_i))
// up to +- det(alpha) * H * norms, where T = diag(t_1 I_{r_1}, ..., t_m I_{r_m}).

#include <algorithm>
#include <numeric>
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

namespace sliceob {

using CycPoly = LaurentPoly<Cyclotomic>;
using CycRational = RationalFunction<Cyclotomic>;
using CycMatrix = LaurentMatrix<Cyclotomic>;

/// Block integer matrix (A_ij), with A_ij of size r_i x r_j, stored assembled.
class BoundarySeifertMatrix {
 public:
  BoundarySeifertMatrix() = default;

  /// m components, all of genus zero.
  static BoundarySeifertMatrix empty(int m) {
    BoundarySeifertMatrix s;
    s.sizes_.assign(m, 0);
    s.full_ = IntMatrix(0, 0, 0);
    return s;
  }

  /// A single knot Seifert matrix (m = 1).
  static BoundarySeifertMatrix knot(const IntMatrix& b) {
    if (!b.is_square()) fail(ErrorCode::DimensionMismatch, "Seifert matrix must be square");
    BoundarySeifertMatrix s;
    s.sizes_ = {static_cast<int>(b.rows())};
    s.full_ = b;
    return s;
  }

  static BoundarySeifertMatrix from_full(std::vector<int> sizes, IntMatrix full) {
    const int total = std::accumulate(sizes.begin(), sizes.end(), 0);
    if (std::any_of(sizes.begin(), sizes.end(), [](int r) { return r < 0; }) ||
        static_cast<int>(full.rows()) != total || static_cast<int>(full.cols()) != total)
      fail(ErrorCode::DimensionMismatch, "block sizes do not match the assembled matrix");
    BoundarySeifertMatrix s;
    s.sizes_ = std::move(sizes);
    s.full_ = std::move(full);
    return s;
  }

  /// blocks[i][j] is A_ij; r_i is taken from the row count of A_ii.
  static BoundarySeifertMatrix from_blocks(const std::vector<std::vector<IntMatrix>>& blocks) {
    const std::size_t m = blocks.size();
    std::vector<int> sizes(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (blocks[i].size() != m) fail(ErrorCode::DimensionMismatch, "block row " + std::to_string(i + 1) + " does not have m blocks");
      sizes[i] = static_cast<int>(blocks[i][i].rows());
    }
    const int total = std::accumulate(sizes.begin(), sizes.end(), 0);
    IntMatrix full(total, total, 0);
    int ro = 0;
    for (std::size_t i = 0; i < m; ++i) {
      int co = 0;
      for (std::size_t j = 0; j < m; ++j) {
        const IntMatrix& b = blocks[i][j];
        const bool empty_ok = (sizes[i] == 0 || sizes[j] == 0) && b.rows() * b.cols() == 0;
        if (!empty_ok && (static_cast<int>(b.rows()) != sizes[i] || static_cast<int>(b.cols()) != sizes[j]))
          fail(ErrorCode::DimensionMismatch, "block A_" + std::to_string(i + 1) + std::to_string(j + 1) +
                                                 " has the wrong shape");
        for (int r = 0; r < sizes[i]; ++r)
          for (int c = 0; c < sizes[j]; ++c) full(ro + r, co + c) = b(r, c);
        co += sizes[j];
      }
      ro += sizes[i];
    }
    return from_full(std::move(sizes), std::move(full));
  }

  int components() const noexcept { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& block_sizes() const noexcept { return sizes_; }
  int total_size() const noexcept { return static_cast<int>(full_.rows()); }
  const IntMatrix& full() const noexcept { return full_; }

  int offset(int i) const {
    return std::accumulate(sizes_.begin(), sizes_.begin() + i, 0);
  }
  /// Component (0-based) owning assembled index a.
  int component_of(int a) const {
    int acc = 0;
    for (int i = 0; i < components(); ++i) {
      acc += sizes_[i];
      if (a < acc) return i;
    }
    fail(ErrorCode::DimensionMismatch, "index outside the Seifert matrix");
  }
  IntMatrix block(int i, int j) const {
    IntMatrix b(sizes_[i], sizes_[j], 0);
    const int ro = offset(i), co = offset(j);
    for (int r = 0; r < sizes_[i]; ++r)
      for (int c = 0; c < sizes_[j]; ++c) b(r, c) = full_(ro + r, co + c);
    return b;
  }

 private:
  std::vector<int> sizes_;
  IntMatrix full_;
};

/// Empty when A_ij = A_ji^t for i != j, every block size is even, and det(A - A^t) = +-1.
inline std::vector<std::string> validate_seifert(const BoundarySeifertMatrix& a) {
  std::vector<std::string> violations;
  const int m = a.components();
  for (int i = 0; i < m; ++i)
    if (a.block_sizes()[i] % 2 != 0)
      violations.push_back("block size r_" + std::to_string(i + 1) + " = " +
                           std::to_string(a.block_sizes()[i]) + " is odd");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (a.block(i, j) != a.block(j, i).transposed())
        violations.push_back("A_" + std::to_string(i + 1) + std::to_string(j + 1) + " != A_" +
                             std::to_string(j + 1) + std::to_string(i + 1) + "^t");
  const int n = a.total_size();
  IntMatrix skew(n, n, 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) skew(r, c) = a.full()(r, c) - a.full()(c, r);
  const Integer d = integer_determinant(skew);
  if (d != 1 && d != -1) violations.push_back("det(A - A^t) = " + d.get_str() + ", expected +-1");
  return violations;
}

/// psi: Z^m -> Z^r as an r x m integer matrix; column i is the image of the i-th meridian.
class PsiMap {
 public:
  PsiMap() = default;
  explicit PsiMap(IntMatrix matrix) : matrix_(std::move(matrix)) {}

  static PsiMap identity(int m) {
    IntMatrix id(m, m, 0);
    for (int i = 0; i < m; ++i) id(i, i) = 1;
    return PsiMap(std::move(id));
  }

  int rank() const noexcept { return static_cast<int>(matrix_.rows()); }
  int components() const noexcept { return static_cast<int>(matrix_.cols()); }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  Exponent image(int i) const {
    Exponent e(rank());
    for (int r = 0; r < rank(); ++r) e[r] = static_cast<int>(matrix_(r, i));
    return e;
  }

  Exponent apply(const std::vector<long>& v) const {
    if (static_cast<int>(v.size()) != components())
      fail(ErrorCode::DimensionMismatch, "vector length differs from the psi domain");
    Exponent e(rank(), 0);
    for (int r = 0; r < rank(); ++r)
      for (int c = 0; c < components(); ++c) e[r] += static_cast<int>(matrix_(r, c) * v[c]);
    return e;
  }

  /// Empty when every column is non-zero and the Smith form is all ones with full row rank.
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (rank() < 1) out.push_back("H must be non-trivial (rank >= 1)");
    for (int c = 0; c < components(); ++c) {
      bool nonzero = false;
      for (int r = 0; r < rank(); ++r) nonzero = nonzero || matrix_(r, c) != 0;
      if (!nonzero) out.push_back("psi vanishes on meridian " + std::to_string(c + 1));
    }
    if (rank() >= 1) {
      auto divisors = smith_invariants(matrix_);
      bool epi = static_cast<int>(divisors.size()) == rank() &&
                 std::all_of(divisors.begin(), divisors.end(), [](const Integer& d) { return d == 1; });
      if (!epi) out.push_back("psi is not onto Z^" + std::to_string(rank()));
    }
    return out;
  }

  void require_admissible() const {
    auto v = violations();
    if (!v.empty()) fail(ErrorCode::InadmissiblePsi, v.front());
  }

 private:
  IntMatrix matrix_;
};

/// (alpha (x) psi)(A^t - A T) over Q(zeta_N)[H].
inline CycMatrix build_twisted_matrix(const BoundarySeifertMatrix& a, const MonomialRep& rep,
                                      const PsiMap& psi) {
  const int m = a.components();
  if (rep.generator_count() != m)
    fail(ErrorCode::DimensionMismatch, "representation has " + std::to_string(rep.generator_count()) +
                                           " generators for an " + std::to_string(m) + "-component link");
  if (psi.components() != m)
    fail(ErrorCode::DimensionMismatch, "psi has " + std::to_string(psi.components()) +
                                           " columns for an " + std::to_string(m) + "-component link");
  if (auto v = validate_seifert(a); !v.empty()) fail(ErrorCode::InvalidSeifert, v.front());
  psi.require_admissible();

  const long conductor = rep.conductor();
  const int k = static_cast<int>(rep.size());
  const int r = a.total_size();
  const int nv = psi.rank();
  const Cyclotomic one = Cyclotomic::one(conductor);
  CycMatrix out(static_cast<std::size_t>(r) * k, static_cast<std::size_t>(r) * k, nv, one);
  const Exponent origin(nv, 0);
  for (int row = 0; row < r; ++row) {
    for (int col = 0; col < r; ++col) {
      // (A^t)_{row,col} contributes c * I_k
      if (const long c = a.full()(col, row); c != 0)
        for (int l = 0; l < k; ++l)
          out(row * k + l, col * k + l).add_term(origin, Cyclotomic::rational(conductor, c));
      // -(A T)_{row,col} = -A_{row,col} t_{comp(col)} contributes -c alpha(x_i) psi(t_i)
      if (const long c = a.full()(row, col); c != 0) {
        const int comp = a.component_of(col);
        const MonomialMatrix& g = rep.generators()[comp];
        const Exponent e = psi.image(comp);
        for (int l = 0; l < k; ++l)
          out(row * k + g.perm()[l], col * k + l)
              .add_term(e, Cyclotomic::rational(conductor, -c) * Cyclotomic::root(conductor, g.diag()[l]));
      }
    }
  }
  return out;
}

/// I_k - alpha(x_i) psi(t_i) over Q(zeta_N)[H].
inline CycMatrix meridian_matrix(const MonomialRep& rep, const PsiMap& psi, int i) {
  const long conductor = rep.conductor();
  const int k = static_cast<int>(rep.size());
  const Cyclotomic one = Cyclotomic::one(conductor);
  CycMatrix out(k, k, psi.rank(), one);
  const MonomialMatrix& g = rep.generators().at(i);
  const Exponent e = psi.image(i);
  for (int l = 0; l < k; ++l) {
    out(l, l).add_term(Exponent(psi.rank(), 0), one);
    out(g.perm()[l], l).add_term(e, -Cyclotomic::root(conductor, g.diag()[l]));
  }
  return out;
}

/// prod_i det(I_k - alpha(x_i) psi(t_i)).
inline CycPoly meridian_product(const MonomialRep& rep, const PsiMap& psi) {
  CycPoly prod = CycPoly::constant(psi.rank(), Cyclotomic::one(rep.conductor()));
  for (int i = 0; i < rep.generator_count(); ++i) prod = prod * laurent_det(meridian_matrix(rep, psi, i));
  return prod;
}

/// rank(L, psi, alpha) = k m - k + n - rank(M), n = k * sum r_i.
inline long rank_of_link(const BoundarySeifertMatrix& a, const MonomialRep& rep, const PsiMap& psi) {
  const CycMatrix mat = build_twisted_matrix(a, rep, psi);
  const long k = static_cast<long>(rep.size());
  const long m = a.components();
  const long n = static_cast<long>(mat.rows());
  return k * m - k + n - static_cast<long>(laurent_rank(mat));
}

/// The indeterminacy +- det(alpha(pi)) * H * N(Q(H)) of a torsion value.
struct TorsionAmbiguity {
  bool sign = true;
  int monomial_rank = 0;
  DetGroup det_group;
  bool norms = true;
};

struct TorsionClass {
  CycRational value;  // canonical representative
  TorsionAmbiguity ambiguity;
  long conductor = 1;
};

inline TorsionAmbiguity ambiguity_for(const MonomialRep& rep, const PsiMap& psi) {
  TorsionAmbiguity amb;
  amb.monomial_rank = psi.rank();
  amb.det_group = det_group(rep);
  return amb;
}

inline TorsionClass boundary_torsion(const BoundarySeifertMatrix& a, const MonomialRep& rep,
                                     const PsiMap& psi) {
  const CycMatrix mat = build_twisted_matrix(a, rep, psi);
  CycPoly det = laurent_det(mat);
  if (det.is_zero())
    fail(ErrorCode::RankTooLarge, "det((alpha x psi)(A^t - AT)) = 0, so rank(L, psi, alpha) > k(m - 1)");
  TorsionClass t;
  t.value = CycRational(std::move(det), meridian_product(rep, psi)).canonical();
  t.ambiguity = ambiguity_for(rep, psi);
  t.conductor = rep.conductor();
  return t;
}

/// Torsion of the m-component unlink: prod_i det(I - psi(mu_i) alpha(mu_i))^-1.
inline TorsionClass unlink_torsion(int m, const MonomialRep& rep, const PsiMap& psi) {
  if (rep.generator_count() != m || psi.components() != m)
    fail(ErrorCode::DimensionMismatch, "representation and psi must both have m = " + std::to_string(m) + " generators");
  psi.require_admissible();
  TorsionClass t;
  t.value = CycRational(CycPoly::constant(psi.rank(), Cyclotomic::one(rep.conductor())),
                        meridian_product(rep, psi))
                .canonical();
  t.ambiguity = ambiguity_for(rep, psi);
  t.conductor = rep.conductor();
  return t;
}

namespace detail {

// Enumerates integer vectors of length len with sum of squares exactly `target`,
// last entry positive; calls visit(v) until it returns true.
template <class Visit>
bool enumerate_square_sums(std::vector<long>& v, std::size_t pos, long remaining, std::size_t& budget,
                           Visit&& visit) {
  if (budget == 0) return false;
  --budget;
  if (pos == v.size()) return remaining == 0 && visit(v);
  const long bound = detail::isqrt(remaining);
  const bool first = pos == 0, last = pos + 1 == v.size();
  for (long x = last ? 1 : -bound; x <= bound; ++x) {
    if ((first || last) && x == 0) continue;
    if (last && x * x != remaining) continue;
    v[pos] = x;
    if (enumerate_square_sums(v, pos + 1, remaining - x * x, budget, visit)) return true;
    if (budget == 0) return false;
  }
  return false;
}

}  // namespace detail

struct FoxMilnorResult {
  Membership status = Membership::Undecided;
  std::vector<Integer> factor;  // f with P = +- c^2 t^l f(t) f(t^-1)
  Rational square_root_content; // c
  std::string reason;
};

inline constexpr std::size_t kDefaultFactorSearchBudget = 1'000'000;

/// Decides whether a one-variable P with rational coefficients lies in +-t^Z * N(Q(t)),
/// i.e. P = +- c^2 t^l f(t) f(t^-1) with f in Z[t] primitive and c in Q.
/// The t^0 coefficient of f(t) f(t^-1) is sum f_i^2, so after shifting P to
/// span [0, 2d] the middle coefficient fixes sum f_i^2 and bounds every f_i.
inline FoxMilnorResult fox_milnor_check(const LaurentPoly<Rational>& p,
                                        std::size_t budget = kDefaultFactorSearchBudget) {
  FoxMilnorResult res;
  if (p.nvars() != 1) fail(ErrorCode::InvalidArgument, "Fox-Milnor check needs one variable");
  if (p.is_zero()) fail(ErrorCode::InvalidArgument, "Fox-Milnor check of zero");
  const int lo = p.trailing_term().first[0];
  const int hi = p.leading_term().first[0];
  const int span = hi - lo;
  // content and primitive integer part
  Integer den_lcm = 1, num_gcd = 0;
  for (const auto& [e, c] : p.terms()) {
    den_lcm = lcm(den_lcm, Integer(c.get_den()));
    num_gcd = gcd(num_gcd, Integer(c.get_num()));
  }
  const Rational content(num_gcd, den_lcm);
  std::vector<Integer> prim(span + 1);
  for (const auto& [e, c] : p.terms()) {
    Rational v = c / content;
    prim[e[0] - lo] = v.get_num();
  }
  Integer cn = content.get_num(), cd = content.get_den();
  if (!mpz_perfect_square_p(cn.get_mpz_t()) || !mpz_perfect_square_p(cd.get_mpz_t())) {
    res.status = Membership::NotMember;
    res.reason = "content " + content.get_str() + " is not a rational square";
    return res;
  }
  res.square_root_content = Rational(sqrt(cn), sqrt(cd));
  if (span % 2 != 0) {
    res.status = Membership::NotMember;
    res.reason = "odd degree span " + std::to_string(span);
    return res;
  }
  const int d = span / 2;
  const Integer middle = abs(prim[d]);
  if (!middle.fits_slong_p()) {
    res.reason = "middle coefficient too large for the factor search";
    return res;
  }
  // P' = t^d f(t) f(t^-1): coefficient j (0..2d) is sum_i f_i f_{i+d-j}
  std::vector<long> f(d + 1);
  std::size_t left = budget;
  bool found = detail::enumerate_square_sums(f, 0, middle.get_si(), left, [&](const std::vector<long>& cand) {
    std::vector<Integer> prod(span + 1);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) prod[i - j + d] += Integer(cand[i]) * cand[j];
    for (int sgn : {1, -1}) {
      bool ok = true;
      for (int j = 0; j <= span && ok; ++j) ok = prod[j] * sgn == prim[j];
      if (ok) return true;
    }
    return false;
  });
  if (found) {
    res.status = Membership::Member;
    for (long x : f) res.factor.emplace_back(x);
    res.reason = "P = +- c^2 t^l f(t) f(1/t)";
  } else if (left == 0) {
    res.reason = "factor search budget exhausted";
  } else {
    res.status = Membership::NotMember;
    res.reason = "no integer f with P = +- c^2 t^l f(t) f(1/t) (exhaustive search over sum f_i^2 = " +
                 middle.get_str() + ")";
  }
  return res;
}

struct SliceCheck {
  Membership status = Membership::Undecided;
  std::string reason;
  CycRational ratio;                  // tau / tau(unlink), as computed
  std::optional<CycPoly> simplified;  // ratio or its inverse as a Laurent polynomial
  bool inverted = false;              // simplified is the inverse ratio
  std::optional<NormVerdict> norm;
  std::optional<FoxMilnorResult> fox_milnor;
};

namespace detail {

// The coefficient c divided by some element of +-det(alpha): returns (d, c/d) with c/d rational.
inline std::optional<std::pair<RootOfUnity, Rational>> split_unit(const Cyclotomic& c, const DetGroup& g) {
  const long order = lcm_long(g.order, 2);
  for (long j = 0; j < order; ++j) {
    RootOfUnity d(j, order);
    if (!g.contains(d) && !g.contains(d * RootOfUnity::minus_one())) continue;
    const long n = lcm_long(c.conductor(), d.den());
    Cyclotomic q = promote(c, n) * Cyclotomic::root(n, d.inverse());
    if (auto r = q.as_rational()) return std::pair{d, *r};
  }
  return std::nullopt;
}

}  // namespace detail

/// Compares a boundary-link torsion with the unlink torsion modulo
/// +- det(alpha) * H * N(Q(H)) in the decidable cases.
inline SliceCheck slice_consequence_check(const TorsionClass& t, const MonomialRep& rep, const PsiMap& psi, int m,
                                          std::size_t factor_budget = kDefaultFactorSearchBudget) {
  SliceCheck out;
  const TorsionClass unlink = unlink_torsion(m, rep, psi);
  out.ratio = t.value / unlink.value;
  std::optional<CycPoly> poly = out.ratio.as_laurent();
  if (!poly) {
    poly = out.ratio.inverse().as_laurent();
    out.inverted = poly.has_value();
  }
  if (!poly) {
    out.reason = "ratio does not simplify to a Laurent polynomial";
    return out;
  }
  out.simplified = *poly;
  const DetGroup& dg = t.ambiguity.det_group;

  if (auto mono = poly->as_monomial()) {
    auto split = detail::split_unit(mono->second, dg);
    if (split && (split->second == 1 || split->second == -1)) {
      out.status = Membership::Member;
      out.reason = "ratio is a monomial times +-det(alpha)";
      return out;
    }
    if (split) {
      // nonzero rational constant up to H and +-det(alpha); norms are a group, so inversion is harmless
      out.norm = norm_class_in_conductor(split->second, rep.conductor(), true);
      out.status = out.norm->status;
      out.reason = "ratio is the constant " + split->second.get_str() + " up to units: " + out.norm->reason;
      return out;
    }
  }

  if (poly->nvars() == 1 && rep.conductor() <= 2) {
    LaurentPoly<Rational> p(1);
    for (const auto& [e, c] : poly->terms()) p.add_term(e, *c.as_rational());
    out.fox_milnor = fox_milnor_check(p, factor_budget);
    out.status = out.fox_milnor->status;
    out.reason = out.fox_milnor->reason;
    return out;
  }
  out.reason = "norm membership of a non-constant ratio is only decided in one variable over Q";
  return out;
}

/// P A P^t for a block-diagonal integer P (given assembled, block sizes matching A).
inline BoundarySeifertMatrix congruent(const BoundarySeifertMatrix& a, const IntMatrix& p) {
  const int n = a.total_size();
  if (static_cast<int>(p.rows()) != n || !p.is_square())
    fail(ErrorCode::DimensionMismatch, "congruence matrix has the wrong size");
  IntMatrix out(n, n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long acc = 0;
      for (int k = 0; k < n; ++k) {
        if (p(i, k) == 0) continue;
        for (int l = 0; l < n; ++l) acc += p(i, k) * a.full()(k, l) * p(j, l);
      }
      out(i, j) = acc;
    }
  return BoundarySeifertMatrix::from_full(a.block_sizes(), std::move(out));
}

}  // namespace sliceob
