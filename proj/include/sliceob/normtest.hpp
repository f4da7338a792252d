#pragma once

// Hermitian squares q * conj(q) in Z[zeta_8].
//
// For q = a + b z + c z^2 + d z^3 (z = e^(2 pi i/8)),
//   q * conj(q) = (a^2 + b^2 + c^2 + d^2) + sqrt(2) * (a(b - d) + c(b + d)),
// using z + z^-1 = sqrt(2), z^2 + z^-2 = 0, z^3 + z^-3 = -sqrt(2).
// A rational integer n is therefore a hermitian square exactly when some
// integer quadruple has a^2 + b^2 + c^2 + d^2 = n and a(b - d) + c(b + d) = 0,
// which confines every coordinate to |.| <= sqrt(n).
//
// Z[zeta_8] is a UFD, so x is in the norm class iff every rational prime
// dividing x to odd multiplicity is itself a hermitian square.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sliceob/cyclotomic.hpp"
#include "sliceob/errors.hpp"
#include "sliceob/numbers.hpp"

namespace sliceob {

inline constexpr long kNormConductor = 8;
inline constexpr unsigned long kDefaultTrialDivisionBound = 10'000'000;
/// Above this target the exhaustive quadruple search is replaced by the
/// splitting criterion for primes (see represent_prime_or_certify).
inline constexpr unsigned long kExhaustiveSearchLimit = 20'000;

using Quadruple = std::array<Integer, 4>;

inline Cyclotomic quadruple_to_cyclotomic(const Quadruple& q) {
  std::vector<Rational> coeffs;
  for (const auto& c : q) coeffs.emplace_back(c);
  return Cyclotomic::from_coefficients(kNormConductor, coeffs);
}

inline Cyclotomic hermitian_square(const Cyclotomic& q) { return q * q.conj(); }

namespace detail {

inline bool quadruple_is_witness(long a, long b, long c, long d, long n) {
  return a * a + b * b + c * c + d * d == n && a * (b - d) + c * (b + d) == 0;
}

inline long isqrt(long n) {
  if (n < 0) return -1;
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline Quadruple to_quadruple(long a, long b, long c, long d) {
  return {Integer(a), Integer(b), Integer(c), Integer(d)};
}

inline void verify_witness(const Quadruple& w, const Integer& n) {
  auto v = hermitian_square(quadruple_to_cyclotomic(w)).as_rational();
  if (!v || *v != Rational(n))
    fail(ErrorCode::InternalDivisibilityFailure, "hermitian-square witness failed verification");
}

}  // namespace detail

/// Searches every integer quadruple with a^2+b^2+c^2+d^2 = n and vanishing
/// sqrt(2)-part. Returns a witness re-verified by exact multiplication, or
/// nullopt once the search space is exhausted.
inline std::optional<Quadruple> represent_as_hermitian_square(long n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "hermitian-square search needs n >= 1");
  // Cheap families first: a + c z^2 (a^2 + c^2) and a + b (z + z^3) (a^2 + 2 b^2).
  const long s = detail::isqrt(n);
  for (long a = 0; a <= s; ++a) {
    const long rest = n - a * a;
    const long c = detail::isqrt(rest);
    if (c * c == rest) {
      Quadruple w = detail::to_quadruple(a, 0, c, 0);
      detail::verify_witness(w, n);
      return w;
    }
    if (rest % 2 == 0) {
      const long b = detail::isqrt(rest / 2);
      if (2 * b * b == rest) {
        Quadruple w = detail::to_quadruple(a, b, 0, b);
        detail::verify_witness(w, n);
        return w;
      }
    }
  }
  for (long a = -s; a <= s; ++a) {
    const long ra = n - a * a;
    const long sb = detail::isqrt(ra);
    for (long b = -sb; b <= sb; ++b) {
      const long rb = ra - b * b;
      const long sc = detail::isqrt(rb);
      for (long c = -sc; c <= sc; ++c) {
        const long rc = rb - c * c;
        const long d = detail::isqrt(rc);
        if (d * d != rc) continue;
        for (long dd : {d, -d}) {
          if (detail::quadruple_is_witness(a, b, c, dd, n)) {
            Quadruple w = detail::to_quadruple(a, b, c, dd);
            detail::verify_witness(w, n);
            return w;
          }
        }
      }
    }
  }
  return std::nullopt;
}

struct PrimePower {
  Integer prime;
  unsigned long multiplicity = 0;
};

/// Trial division; the cofactor left above `bound` must be 1 or a prime
/// (certified when it is below bound^2).
inline std::vector<PrimePower> factor_integer(Integer n,
                                              unsigned long bound = kDefaultTrialDivisionBound) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "factor_integer expects a positive integer");
  std::vector<PrimePower> out;
  auto take = [&](unsigned long p) {
    if (n % p != 0) return;
    PrimePower pp{Integer(p), 0};
    while (n % p == 0) {
      n /= p;
      ++pp.multiplicity;
    }
    out.push_back(pp);
  };
  take(2);
  unsigned long p = 3;
  for (; p <= bound && Integer(p) * p <= n; p += 2) take(p);
  if (n > 1) {
    const bool below_square = Integer(p) * p > n;
    if (!below_square)
      fail(ErrorCode::FactorizationBudgetExceeded,
           "cofactor " + n.get_str() + " exceeds the trial-division bound");
    out.push_back({n, 1});
  }
  return out;
}

enum class Membership { Member, NotMember, Undecided };

inline std::string to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "MEMBER";
    case Membership::NotMember: return "NOT_MEMBER";
    case Membership::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

struct NormObstruction {
  Integer prime;
  unsigned long multiplicity = 0;
  std::string method;  // "exhaustive_search" or "splitting_criterion"
};

struct NormVerdict {
  Membership status = Membership::Undecided;
  Rational target;               // the value tested
  Rational absolute;             // |target| when the sign was absorbed
  std::optional<Cyclotomic> witness;  // q with q * conj(q) = absolute
  std::optional<NormObstruction> obstruction;
  std::vector<PrimePower> factorization;  // of the cleared integer
  std::string reason;
};

/// Representation of a prime, or a certificate that none exists. Small p use
/// the exhaustive search. For large p: when p = 7 mod 8 the Frobenius of p is
/// complex conjugation, so every prime of Z[zeta_8] above p is fixed by
/// conjugation and has even valuation in any q*conj(q); otherwise p is a sum
/// a^2 + c^2 or a^2 + 2b^2 and a witness is constructed directly.
inline std::pair<std::optional<Quadruple>, std::string> represent_prime_or_certify(const Integer& p) {
  if (p <= kExhaustiveSearchLimit) return {represent_as_hermitian_square(p.get_si()), "exhaustive_search"};
  if (p % 8 == 7) return {std::nullopt, "splitting_criterion"};
  // p = 2 or p = 1, 3, 5 mod 8: p = a^2 + c^2 (p = 1 mod 4) or a^2 + 2 b^2 (p = 1, 3 mod 8)
  Integer a = 0;
  for (; a * a <= p; ++a) {
    Integer rest = p - a * a;
    Integer c = sqrt(rest);
    if (c * c == rest) {
      Quadruple w{a, 0, c, 0};
      detail::verify_witness(w, p);
      return {w, "constructed"};
    }
    if (rest % 2 == 0) {
      Integer b = sqrt(rest / 2);
      if (2 * b * b == rest) {
        Quadruple w{a, b, 0, b};
        detail::verify_witness(w, p);
        return {w, "constructed"};
      }
    }
  }
  fail(ErrorCode::InternalDivisibilityFailure, "no representation found for a split prime");
}

/// Decides whether x = +-q*conj(q) (sign per `allow_negative`) for some q in Q(zeta_8).
inline NormVerdict rational_norm_class(const Rational& x, bool allow_negative = true,
                                       unsigned long trial_bound = kDefaultTrialDivisionBound) {
  if (x == 0) fail(ErrorCode::InvalidArgument, "norm class of zero");
  NormVerdict v;
  v.target = x;
  if (x < 0 && !allow_negative) {
    v.status = Membership::NotMember;
    v.absolute = x;
    v.reason = "hermitian squares are positive and -1 is not an available unit";
    return v;
  }
  v.absolute = abs(x);
  // |x| = num/den = (num*den)/den^2, and q*conj(q) scales by squares of rationals
  const Integer num = v.absolute.get_num();
  const Integer den = v.absolute.get_den();
  const Integer cleared = num * den;
  v.factorization = factor_integer(cleared, trial_bound);

  Cyclotomic q = Cyclotomic::one(kNormConductor);
  for (const auto& pp : v.factorization) {
    Integer half = 1;
    for (unsigned long i = 0; i < pp.multiplicity / 2; ++i) half *= pp.prime;
    q *= Cyclotomic::rational(kNormConductor, Rational(half));
    if (pp.multiplicity % 2 == 0) continue;
    auto [rep, method] = represent_prime_or_certify(pp.prime);
    if (!rep) {
      v.status = Membership::NotMember;
      v.obstruction = NormObstruction{pp.prime, pp.multiplicity, method};
      v.reason = "prime " + pp.prime.get_str() + " divides the target to odd multiplicity and is not a norm";
      return v;
    }
    q *= quadruple_to_cyclotomic(*rep);
  }
  q *= Cyclotomic::rational(kNormConductor, Rational(1, 1) / Rational(den));
  if (hermitian_square(q).as_rational() != std::optional<Rational>(v.absolute))
    fail(ErrorCode::InternalDivisibilityFailure, "composite witness failed verification");
  v.status = Membership::Member;
  v.witness = q;
  v.reason = x < 0 ? "-x is a hermitian square" : "x is a hermitian square";
  return v;
}

/// Norm class of a rational in the coefficient field Q(zeta_conductor).
/// Decided for Q (squares) and for conductor 8; anything else is undecided.
inline NormVerdict norm_class_in_conductor(const Rational& x, long conductor, bool allow_negative = true,
                                           unsigned long trial_bound = kDefaultTrialDivisionBound) {
  if (conductor == kNormConductor) return rational_norm_class(x, allow_negative, trial_bound);
  NormVerdict v;
  v.target = x;
  v.absolute = abs(x);
  if (conductor == 1 || conductor == 2) {
    // trivial involution: q*conj(q) = q^2
    if (x < 0 && !allow_negative) {
      v.status = Membership::NotMember;
      v.reason = "squares are positive";
      return v;
    }
    mpz_class n = v.absolute.get_num(), d = v.absolute.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
      v.status = Membership::Member;
      Rational root(sqrt(n), sqrt(d));
      v.witness = Cyclotomic::rational(1, root);
      v.reason = "|x| is a rational square";
    } else {
      v.status = Membership::NotMember;
      v.reason = "|x| is not a rational square";
    }
    return v;
  }
  v.status = Membership::Undecided;
  v.reason = "norm classes are only decided over Q and Q(zeta_8)";
  return v;
}

}  // namespace sliceob
