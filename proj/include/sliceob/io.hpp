#pragma once

// JSON encodings. Exact rationals travel as "p/q" strings; permutations in
// files are 1-indexed.

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sliceob/cyclotomic.hpp"
#include "sliceob/errors.hpp"
#include "sliceob/laurent.hpp"
#include "sliceob/monomial.hpp"
#include "sliceob/normtest.hpp"
#include "sliceob/satellite.hpp"
#include "sliceob/torsion.hpp"

namespace sliceob::io {

using json = nlohmann::json;

inline json to_json(const Rational& q) { return format_rational(q); }
inline json to_json(const Integer& z) { return z.get_str(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(ErrorCode::ParseError, "expected an integer or a \"p/q\" string, got " + j.dump());
}

inline long long_from_json(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(ErrorCode::ParseError, std::string(what) + " must be an integer");
  return j.get<long>();
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

// ---- cyclotomic values

inline json to_json(const RootOfUnity& z) { return {{"num", z.num()}, {"den", z.den()}}; }

inline RootOfUnity root_from_json(const json& j) {
  return RootOfUnity(long_from_json(field(j, "num"), "num"), long_from_json(field(j, "den"), "den"));
}

inline json to_json(const Cyclotomic& x) {
  json coeffs = json::array();
  for (const auto& c : x.coefficients()) coeffs.push_back(to_json(c));
  return {{"conductor", x.conductor()}, {"coeffs", coeffs}};
}

inline Cyclotomic cyclotomic_from_json(const json& j) {
  const long n = long_from_json(field(j, "conductor"), "conductor");
  if (n < 1) fail(ErrorCode::ParseError, "conductor must be positive");
  std::vector<Rational> coeffs;
  for (const auto& c : field(j, "coeffs")) coeffs.push_back(rational_from_json(c));
  return Cyclotomic::from_coefficients(n, coeffs);
}

// ---- integer matrices

inline json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

/// `cols_hint` fixes the width of an empty matrix.
inline IntMatrix int_matrix_from_json(const json& j, std::size_t cols_hint = 0) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : cols_hint;
  IntMatrix m(rows, cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) fail(ErrorCode::ParseError, "matrix rows have unequal lengths");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = long_from_json(j[i][c], "matrix entry");
  }
  return m;
}

// ---- monomial representations

inline json to_json(const MonomialMatrix& m) {
  json perm = json::array(), diag = json::array();
  for (int p : m.perm()) perm.push_back(p + 1);
  for (const auto& d : m.diag()) diag.push_back(to_json(d));
  return {{"perm", perm}, {"diag", diag}};
}

inline json to_json(const MonomialRep& rep) {
  json gens = json::array();
  for (const auto& g : rep.generators()) gens.push_back(to_json(g));
  return {{"size", rep.size()}, {"conductor", rep.conductor()}, {"generators", gens}};
}

inline MonomialRep rep_from_json(const json& j) {
  const long k = long_from_json(field(j, "size"), "size");
  const long n = j.contains("conductor") ? long_from_json(j.at("conductor"), "conductor") : 0;
  std::vector<MonomialMatrix> gens;
  for (const auto& g : field(j, "generators")) {
    std::vector<int> perm;
    for (const auto& p : field(g, "perm")) perm.push_back(static_cast<int>(long_from_json(p, "perm entry")) - 1);
    std::vector<RootOfUnity> diag;
    for (const auto& d : field(g, "diag")) diag.push_back(root_from_json(d));
    if (static_cast<long>(perm.size()) != k)
      fail(ErrorCode::SizeMismatch, "generator " + std::to_string(gens.size() + 1) + " has size " +
                                        std::to_string(perm.size()) + ", expected " + std::to_string(k));
    gens.emplace_back(std::move(perm), std::move(diag));
  }
  if (gens.empty()) fail(ErrorCode::ParseError, "a representation needs at least one generator");
  return MonomialRep(std::move(gens), n);
}

// ---- Laurent polynomials and rational functions

template <class C>
json to_json(const LaurentPoly<C>& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coeff", to_json(c)}});
  return terms;
}

inline LaurentPoly<Cyclotomic> cyc_poly_from_json(const json& j, int nvars) {
  LaurentPoly<Cyclotomic> p(nvars);
  for (const auto& t : j) p.add_term(field(t, "exp").get<Exponent>(), cyclotomic_from_json(field(t, "coeff")));
  return p;
}

template <class C>
json to_json(const RationalFunction<C>& f) {
  return {{"numerator", to_json(f.numerator())}, {"denominator", to_json(f.denominator())}};
}

// ---- Seifert data, psi, companions

inline json to_json(const BoundarySeifertMatrix& a) {
  json blocks = json::array();
  for (int i = 0; i < a.components(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.components(); ++j) row.push_back(to_json(a.block(i, j)));
    blocks.push_back(row);
  }
  return {{"m", a.components()}, {"sizes", a.block_sizes()}, {"blocks", blocks}};
}

inline BoundarySeifertMatrix seifert_from_json(const json& j) {
  const long m = long_from_json(field(j, "m"), "m");
  const json& blocks = field(j, "blocks");
  if (!blocks.is_array() || static_cast<long>(blocks.size()) != m)
    fail(ErrorCode::DimensionMismatch, "\"blocks\" must be an m x m array of matrices");
  std::vector<std::vector<IntMatrix>> b(m);
  for (long i = 0; i < m; ++i) {
    if (!blocks[i].is_array() || static_cast<long>(blocks[i].size()) != m)
      fail(ErrorCode::DimensionMismatch, "\"blocks\" must be an m x m array of matrices");
    for (long c = 0; c < m; ++c) b[i].push_back(int_matrix_from_json(blocks[i][c]));
  }
  return BoundarySeifertMatrix::from_blocks(b);
}

inline json to_json(const PsiMap& psi) { return {{"rank", psi.rank()}, {"matrix", to_json(psi.matrix())}}; }

inline PsiMap psi_from_json(const json& j) {
  const long r = long_from_json(field(j, "rank"), "rank");
  IntMatrix m = int_matrix_from_json(field(j, "matrix"));
  if (static_cast<long>(m.rows()) != r) fail(ErrorCode::DimensionMismatch, "psi matrix must have \"rank\" rows");
  return PsiMap(std::move(m));
}

inline json to_json(const AlexanderPoly& d) {
  json c = json::array();
  for (const auto& x : d.coefficients()) c.push_back(x.get_si());
  return c;
}

inline AlexanderPoly companion_from_json(const json& j) {
  if (j.contains("alexander")) {
    std::vector<Integer> c;
    for (const auto& x : j.at("alexander")) c.emplace_back(long_from_json(x, "alexander coefficient"));
    return AlexanderPoly(std::move(c));
  }
  if (j.contains("seifert")) return alexander_from_seifert({int_matrix_from_json(j.at("seifert"))});
  fail(ErrorCode::ParseError, "companion needs \"alexander\" or \"seifert\"");
}

inline json to_json(const NormVerdict& v) {
  json out = {{"status", to_string(v.status)}, {"target", to_json(v.target)}, {"absolute", to_json(v.absolute)},
              {"reason", v.reason}};
  json fac = json::array();
  for (const auto& pp : v.factorization) fac.push_back({{"prime", to_json(pp.prime)}, {"multiplicity", pp.multiplicity}});
  out["factorization"] = fac;
  out["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  out["obstruction"] = v.obstruction ? json{{"prime", to_json(v.obstruction->prime)},
                                            {"multiplicity", v.obstruction->multiplicity},
                                            {"method", v.obstruction->method}}
                                     : json(nullptr);
  return out;
}

// ---- files and built-in names

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, "'" + path + "': " + e.what());
  }
}

/// "trivialK" is the trivial k-dimensional representation on m generators;
/// anything else is a representation file.
inline MonomialRep load_rep(const std::string& spec, int m) {
  static const std::regex trivial(R"(trivial(\d+))");
  std::smatch match;
  if (std::regex_match(spec, match, trivial)) {
    const int k = std::stoi(match[1]);
    if (k < 1 || m < 1) fail(ErrorCode::InvalidArgument, "trivial representations need k >= 1 and m >= 1");
    return MonomialRep::trivial(m, static_cast<std::size_t>(k));
  }
  return rep_from_json(read_json_file(spec));
}

/// "idN" is the identity Z^N -> Z^N; anything else is a psi file.
inline PsiMap load_psi(const std::string& spec) {
  static const std::regex identity(R"(id(\d+))");
  std::smatch match;
  if (std::regex_match(spec, match, identity)) return PsiMap::identity(std::stoi(match[1]));
  return psi_from_json(read_json_file(spec));
}

/// Knot names (unknot, trefoil, fig8), "emptyM" for the m-component unlink,
/// or a Seifert file.
inline BoundarySeifertMatrix load_seifert(const std::string& spec) {
  if (auto knot = builtin_knot(spec)) return BoundarySeifertMatrix::knot(knot->seifert.b);
  static const std::regex empty(R"(empty(\d+))");
  std::smatch match;
  if (std::regex_match(spec, match, empty)) return BoundarySeifertMatrix::empty(std::stoi(match[1]));
  return seifert_from_json(read_json_file(spec));
}

/// A knot name or a companion file.
inline AlexanderPoly load_companion(const std::string& spec) {
  if (auto knot = builtin_knot(spec)) return knot->alexander;
  return companion_from_json(read_json_file(spec));
}

}  // namespace sliceob::io
