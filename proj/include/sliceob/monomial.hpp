#pragma once

// Free-group words and monomial (permutation x diagonal) representations.
//
// Convention: a MonomialMatrix M of size k sends basis vector e_c to
// diag[c] * e_{perm[c]}; densely, column c has its single entry diag[c] in
// row perm[c]. Indices are 0-based internally and 1-based in files.

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sliceob/cyclotomic.hpp"
#include "sliceob/errors.hpp"
#include "sliceob/matrix.hpp"

namespace sliceob {

struct Letter {
  int generator = 0;  // 1-based
  int exponent = 1;   // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
    for (const auto& l : letters_)
      if (l.generator < 1 || (l.exponent != 1 && l.exponent != -1))
        fail(ErrorCode::InvalidArgument, "malformed letter in free word");
  }

  /// From signed 1-based generator indices, e.g. {1, 2, -1, -2}.
  static FreeWord from_signed(const std::vector<int>& indices) {
    std::vector<Letter> letters;
    for (int i : indices) {
      if (i == 0) fail(ErrorCode::ParseError, "generator index 0 in signed word");
      letters.push_back({std::abs(i), i > 0 ? 1 : -1});
    }
    return FreeWord(std::move(letters));
  }

  static FreeWord generator(int i) { return FreeWord({{i, 1}}); }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t length() const noexcept { return letters_.size(); }

  int max_generator() const {
    int m = 0;
    for (const auto& l : letters_) m = std::max(m, l.generator);
    return m;
  }

  FreeWord inverse() const {
    std::vector<Letter> inv;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      inv.push_back({it->generator, -it->exponent});
    return FreeWord(std::move(inv));
  }

  friend FreeWord operator*(const FreeWord& a, const FreeWord& b) {
    std::vector<Letter> out = a.letters_;
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return FreeWord(std::move(out));
  }

  /// [a, b] = a b a^-1 b^-1.
  static FreeWord commutator(const FreeWord& a, const FreeWord& b) {
    return a * b * a.inverse() * b.inverse();
  }

  /// Exponent sum of each generator 1..m (the image in Z^m).
  std::vector<long> exponent_sums(int m) const {
    std::vector<long> sums(m, 0);
    for (const auto& l : letters_) {
      if (l.generator > m) fail(ErrorCode::DimensionMismatch, "word uses generator outside 1..m");
      sums[l.generator - 1] += l.exponent;
    }
    return sums;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& l : letters_) {
      if (!s.empty()) s += ' ';
      s += (l.exponent > 0 ? "x" : "X") + std::to_string(l.generator);
    }
    return s.empty() ? "1" : s;
  }

  friend bool operator==(const FreeWord&, const FreeWord&) = default;

 private:
  std::vector<Letter> letters_;
};

namespace detail {

// Recursive-descent parser for: word := item*; item := ('x'|'X') digits | '[' word ',' word ']' | '1'
class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  FreeWord parse() {
    FreeWord w = word();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected character");
    return w;
  }

 private:
  FreeWord word() {
    FreeWord w;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) return w;
      const char c = text_[pos_];
      if (c == 'x' || c == 'X') {
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) error("generator needs an index");
        int idx = std::stoi(std::string(text_.substr(start, pos_ - start)));
        if (idx < 1) error("generator index must be positive");
        w = w * FreeWord({{idx, c == 'x' ? 1 : -1}});
      } else if (c == '[') {
        ++pos_;
        FreeWord a = word();
        expect(',');
        FreeWord b = word();
        expect(']');
        w = w * FreeWord::commutator(a, b);
      } else if (c == '1') {
        ++pos_;
      } else {
        return w;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, "word '" + std::string(text_) + "' at offset " +
                                    std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `x1`, `X1` (inverse), `[w1,w2]` (commutator), juxtaposition; `1` is the empty word.
inline FreeWord parse_word(std::string_view text) { return detail::WordParser(text).parse(); }

class MonomialMatrix {
 public:
  MonomialMatrix() = default;
  MonomialMatrix(std::vector<int> perm, std::vector<RootOfUnity> diag)
      : perm_(std::move(perm)), diag_(std::move(diag)) {
    if (perm_.size() != diag_.size())
      fail(ErrorCode::SizeMismatch, "permutation and diagonal lengths differ");
    std::vector<char> seen(perm_.size(), 0);
    for (int p : perm_) {
      if (p < 0 || p >= static_cast<int>(perm_.size()) || seen[p])
        fail(ErrorCode::InvalidArgument, "not a permutation");
      seen[p] = 1;
    }
  }

  static MonomialMatrix identity(std::size_t k) {
    std::vector<int> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = static_cast<int>(i);
    return {std::move(perm), std::vector<RootOfUnity>(k)};
  }

  static MonomialMatrix diagonal(std::vector<RootOfUnity> diag) {
    MonomialMatrix m = identity(diag.size());
    m.diag_ = std::move(diag);
    return m;
  }

  std::size_t size() const noexcept { return perm_.size(); }
  const std::vector<int>& perm() const noexcept { return perm_; }
  const std::vector<RootOfUnity>& diag() const noexcept { return diag_; }

  /// lcm of the diagonal orders.
  long conductor() const {
    long n = 1;
    for (const auto& d : diag_) n = lcm_long(n, d.den());
    return n;
  }

  bool is_identity() const {
    for (std::size_t c = 0; c < perm_.size(); ++c)
      if (perm_[c] != static_cast<int>(c) || !diag_[c].is_one()) return false;
    return true;
  }

  /// Cycles of the permutation part, each listed from its smallest column.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(perm_.size(), 0);
    for (std::size_t s = 0; s < perm_.size(); ++s) {
      if (seen[s]) continue;
      std::vector<int> cyc;
      for (int c = static_cast<int>(s); !seen[c]; c = perm_[c]) {
        seen[c] = 1;
        cyc.push_back(c);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  /// Sign of the permutation part.
  int sign() const {
    std::size_t even_cycles = 0;
    for (const auto& cyc : cycles())
      if (cyc.size() % 2 == 0) ++even_cycles;
    return even_cycles % 2 == 0 ? 1 : -1;
  }

  /// sign(perm) * prod(diag), itself a root of unity.
  RootOfUnity determinant() const {
    RootOfUnity d = sign() > 0 ? RootOfUnity::one() : RootOfUnity::minus_one();
    for (const auto& z : diag_) d = d * z;
    return d;
  }

  /// Dense form over Q(zeta_conductor); conductor must be a multiple of conductor().
  Matrix<Cyclotomic> dense(long conductor) const {
    Matrix<Cyclotomic> m(size(), size(), Cyclotomic(conductor));
    for (std::size_t c = 0; c < size(); ++c) m(perm_[c], c) = Cyclotomic::root(conductor, diag_[c]);
    return m;
  }

  friend bool operator==(const MonomialMatrix&, const MonomialMatrix&) = default;

 private:
  std::vector<int> perm_;
  std::vector<RootOfUnity> diag_;
};

inline MonomialMatrix mono_mul(const MonomialMatrix& a, const MonomialMatrix& b) {
  if (a.size() != b.size())
    fail(ErrorCode::SizeMismatch, "monomial matrices of sizes " + std::to_string(a.size()) +
                                      " and " + std::to_string(b.size()));
  const std::size_t k = a.size();
  std::vector<int> perm(k);
  std::vector<RootOfUnity> diag(k);
  for (std::size_t c = 0; c < k; ++c) {
    const int mid = b.perm()[c];
    perm[c] = a.perm()[mid];
    diag[c] = a.diag()[mid] * b.diag()[c];
  }
  return {std::move(perm), std::move(diag)};
}

inline MonomialMatrix mono_inv(const MonomialMatrix& a) {
  const std::size_t k = a.size();
  std::vector<int> perm(k);
  std::vector<RootOfUnity> diag(k);
  for (std::size_t c = 0; c < k; ++c) {
    perm[a.perm()[c]] = static_cast<int>(c);
    diag[a.perm()[c]] = a.diag()[c].inverse();
  }
  return {std::move(perm), std::move(diag)};
}

inline MonomialMatrix mono_pow(const MonomialMatrix& a, long e) {
  MonomialMatrix base = e < 0 ? mono_inv(a) : a;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  MonomialMatrix acc = MonomialMatrix::identity(a.size());
  while (n) {
    if (n & 1) acc = mono_mul(acc, base);
    base = mono_mul(base, base);
    n >>= 1;
  }
  return acc;
}

/// A representation of the free group on m generators by monomial matrices.
class MonomialRep {
 public:
  MonomialRep() = default;
  MonomialRep(std::vector<MonomialMatrix> generators, long conductor = 0)
      : generators_(std::move(generators)) {
    if (generators_.empty()) fail(ErrorCode::InvalidArgument, "representation needs generators");
    const std::size_t k = generators_.front().size();
    long n = 1;
    for (const auto& g : generators_) {
      if (g.size() != k) fail(ErrorCode::SizeMismatch, "generator matrices differ in size");
      n = lcm_long(n, g.conductor());
    }
    if (conductor == 0) conductor = n;
    if (conductor % n != 0)
      fail(ErrorCode::InvalidArgument, "declared conductor " + std::to_string(conductor) +
                                           " is not a multiple of the diagonal orders");
    conductor_ = conductor;
  }

  /// The trivial k-dimensional representation on m generators.
  static MonomialRep trivial(int m, std::size_t k = 1) {
    return MonomialRep(std::vector<MonomialMatrix>(m, MonomialMatrix::identity(k)));
  }

  int generator_count() const noexcept { return static_cast<int>(generators_.size()); }
  std::size_t size() const noexcept { return generators_.front().size(); }
  long conductor() const noexcept { return conductor_; }
  const std::vector<MonomialMatrix>& generators() const noexcept { return generators_; }
  const MonomialMatrix& generator(int i) const { return generators_.at(i - 1); }

 private:
  std::vector<MonomialMatrix> generators_;
  long conductor_ = 1;
};

/// Left-to-right product of generator images (inverses for negative letters).
inline MonomialMatrix evaluate_word(const MonomialRep& rep, const FreeWord& w) {
  MonomialMatrix acc = MonomialMatrix::identity(rep.size());
  for (const auto& l : w.letters()) {
    if (l.generator > rep.generator_count())
      fail(ErrorCode::DimensionMismatch, "word uses x" + std::to_string(l.generator) +
                                             " but the representation has " +
                                             std::to_string(rep.generator_count()) + " generators");
    const auto& g = rep.generator(l.generator);
    acc = mono_mul(acc, l.exponent > 0 ? g : mono_inv(g));
  }
  return acc;
}

/// Eigenvalues with multiplicity, sorted by angle. A cycle of length l whose
/// diagonal product is e^(2 pi i j/N) contributes the l-th roots of it.
inline std::vector<RootOfUnity> eigenvalues(const MonomialMatrix& m) {
  std::vector<RootOfUnity> out;
  for (const auto& cyc : m.cycles()) {
    RootOfUnity prod;
    for (int c : cyc) prod = prod * m.diag()[c];
    const long len = static_cast<long>(cyc.size());
    const long j = prod.num(), n = prod.den();
    for (long s = 0; s < len; ++s) out.emplace_back(j + n * s, n * len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct PGroupCertificate {
  bool is_p_group = false;
  long prime = 0;
  std::size_t permutation_group_order = 0;
  long max_diagonal_order = 1;
  bool permutation_condition = false;
  bool diagonal_condition = false;
};

inline constexpr std::size_t kDefaultClosureBudget = 1'000'000;

/// Checks that the permutation parts generate a p-group (by breadth-first
/// closure) and that every diagonal entry is a p-power root of unity.
inline PGroupCertificate verify_p_group(const MonomialRep& rep, long p,
                                        std::size_t closure_budget = kDefaultClosureBudget) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  PGroupCertificate cert;
  cert.prime = p;
  const std::size_t k = rep.size();

  using Perm = std::vector<int>;
  auto compose = [](const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) r[c] = a[b[c]];
    return r;
  };
  Perm id(k);
  for (std::size_t i = 0; i < k; ++i) id[i] = static_cast<int>(i);
  std::set<Perm> seen{id};
  std::deque<Perm> queue{id};
  while (!queue.empty()) {
    Perm cur = std::move(queue.front());
    queue.pop_front();
    // finite group: closure under right multiplication by generators suffices
    for (const auto& g : rep.generators()) {
      Perm next = compose(cur, g.perm());
      if (seen.insert(next).second) {
        if (seen.size() > closure_budget)
          fail(ErrorCode::ClosureBudgetExceeded,
               "permutation closure exceeded " + std::to_string(closure_budget) + " elements");
        queue.push_back(std::move(next));
      }
    }
  }
  cert.permutation_group_order = seen.size();
  cert.permutation_condition = is_power_of(Integer(static_cast<unsigned long>(seen.size())), p);

  cert.diagonal_condition = true;
  for (const auto& g : rep.generators())
    for (const auto& d : g.diag()) {
      cert.max_diagonal_order = std::max(cert.max_diagonal_order, d.order());
      if (!is_power_of(Integer(d.order()), p)) cert.diagonal_condition = false;
    }
  cert.is_p_group = cert.permutation_condition && cert.diagonal_condition;
  return cert;
}

/// The cyclic group generated by the determinants of the generators.
struct DetGroup {
  long order = 1;             // the group is {e^(2 pi i j/order)}
  RootOfUnity generator;      // e^(2 pi i/order)
  bool contains_minus_one = false;

  bool contains(const RootOfUnity& z) const { return order % z.den() == 0; }
  /// Real intersection, {1} or {+1, -1}.
  std::vector<int> real_units() const {
    return contains_minus_one ? std::vector<int>{1, -1} : std::vector<int>{1};
  }
};

inline DetGroup det_group(const MonomialRep& rep) {
  // A subgroup of the roots of unity generated by roots of orders d_i is cyclic of order lcm(d_i).
  long order = 1;
  for (const auto& g : rep.generators()) order = lcm_long(order, g.determinant().order());
  DetGroup out;
  out.order = order;
  out.generator = RootOfUnity(1, order);
  out.contains_minus_one = order % 2 == 0;
  return out;
}

}  // namespace sliceob
