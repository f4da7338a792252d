#pragma once

// Job execution behind the command-line tool. Every job yields a JSON report
// {"schema": 1, "command", "inputs", "result", "certificate"} or an error
// report {"schema": 1, "command", "error": {"code", "message"}}.

#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sliceob/io.hpp"
#include "sliceob/satellite.hpp"
#include "sliceob/torsion.hpp"

namespace sliceob {

inline constexpr int kReportSchema = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitValidationError = 3,
  kExitBudgetExceeded = 4,
  kExitInternalError = 5,
  kExitVerificationFailed = 6,
};

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::SizeMismatch:
      return kExitInputError;
    case ErrorCode::ClosureBudgetExceeded:
    case ErrorCode::FactorizationBudgetExceeded:
      return kExitBudgetExceeded;
    case ErrorCode::InternalDivisibilityFailure:
    case ErrorCode::CrossCheckMismatch:
      return kExitInternalError;
    default:
      return kExitValidationError;
  }
}

struct JobSpec {
  std::string command;  // e.g. "satellite bing"
  std::string rep;      // file or trivialK
  std::string seifert;  // file, knot name or emptyM
  std::string psi;      // file or idN
  std::string knot;     // companion: knot name or file
  std::string word;     // word grammar, e.g. "[x1,x2]"
  std::string value;    // norm test target
  std::string report;   // report to verify
  int m = 0;            // component count; 0 means infer
  long p = 2;
  long conductor = kNormConductor;
  bool positive_only = false;
  std::optional<std::size_t> budget;  // closure and factor-search budget
  unsigned long trial_bound = kDefaultTrialDivisionBound;
};

struct JobResult {
  int exit_code = kExitOk;
  io::json report;
};

/// Budget from the TORSION_SEARCH_BUDGET environment variable, if set.
inline std::optional<std::size_t> budget_from_env() {
  const char* s = std::getenv("TORSION_SEARCH_BUDGET");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0' || v == 0) fail(ErrorCode::InvalidArgument, "TORSION_SEARCH_BUDGET must be a positive integer");
  return static_cast<std::size_t>(v);
}

namespace detail {

using io::json;

inline std::size_t resolve_budget(const JobSpec& job, std::size_t fallback) {
  if (job.budget) return *job.budget;
  if (auto env = budget_from_env()) return *env;
  return fallback;
}

// Deterministic evaluation point with non-zero integer coordinates.
inline std::vector<Rational> check_point(int nvars) {
  std::mt19937 rng(0x51ce0b);
  std::uniform_int_distribution<int> mag(2, 97);
  std::vector<Rational> pt;
  for (int i = 0; i < nvars; ++i) {
    const int v = mag(rng);
    pt.emplace_back(rng() % 2 ? v : -v);
  }
  return pt;
}

inline json point_json(const std::vector<Rational>& pt) {
  json out = json::array();
  for (const auto& q : pt) out.push_back(io::to_json(q));
  return out;
}

inline std::vector<Rational> point_from_json(const json& j) {
  std::vector<Rational> pt;
  for (const auto& q : j) pt.push_back(io::rational_from_json(q));
  return pt;
}

inline json eigen_json(const std::vector<RootOfUnity>& zs) {
  json out = json::array();
  for (const auto& z : zs) out.push_back(z.to_string());
  return out;
}

inline json det_group_json(const DetGroup& g) {
  return {{"order", g.order}, {"generator", g.generator.to_string()}, {"real_units", g.real_units()}};
}

inline int infer_m(const JobSpec& job, int fallback) { return job.m > 0 ? job.m : fallback; }

// ---- determinant certificates

inline Cyclotomic twisted_det_at(const BoundarySeifertMatrix& a, const MonomialRep& rep, const PsiMap& psi,
                                 const std::vector<Rational>& pt) {
  const CycMatrix m = build_twisted_matrix(a, rep, psi);
  return field_determinant(m.evaluate_rational(pt), Cyclotomic::one(rep.conductor()));
}

inline Cyclotomic meridian_product_at(const MonomialRep& rep, const PsiMap& psi, const std::vector<Rational>& pt) {
  Cyclotomic acc = Cyclotomic::one(rep.conductor());
  for (int i = 0; i < psi.components(); ++i)
    acc *= field_determinant(meridian_matrix(rep, psi, i).evaluate_rational(pt), Cyclotomic::one(rep.conductor()));
  return acc;
}

inline json torsion_json(const TorsionClass& t) {
  return {{"value", io::to_json(t.value)},
          {"ambiguity",
           {{"sign", t.ambiguity.sign},
            {"monomial_rank", t.ambiguity.monomial_rank},
            {"det_group", det_group_json(t.ambiguity.det_group)},
            {"norms", t.ambiguity.norms}}},
          {"conductor", t.conductor}};
}

// Raw numerator and denominator plus their values at a fixed point.
inline json torsion_certificate(const BoundarySeifertMatrix* a, const MonomialRep& rep, const PsiMap& psi) {
  const auto pt = check_point(psi.rank());
  const Cyclotomic zero(rep.conductor());
  json cert;
  CycPoly det = a ? laurent_det(build_twisted_matrix(*a, rep, psi)) : CycPoly::constant(psi.rank(), Cyclotomic::one(rep.conductor()));
  const CycPoly mer = meridian_product(rep, psi);
  cert["determinant"] = io::to_json(det);
  cert["meridian_product"] = io::to_json(mer);
  cert["check_point"] = point_json(pt);
  cert["determinant_at_point"] = io::to_json(det.evaluate_rational(pt, zero));
  cert["meridian_product_at_point"] = io::to_json(mer.evaluate_rational(pt, zero));
  return cert;
}

// ---- commands

inline json cmd_rep_verify(const JobSpec& job, json& inputs, json& cert) {
  const MonomialRep rep = io::load_rep(job.rep, infer_m(job, 1));
  const std::size_t budget = resolve_budget(job, kDefaultClosureBudget);
  inputs = {{"rep_source", job.rep}, {"rep", io::to_json(rep)}, {"p", job.p}, {"closure_budget", budget}};
  const PGroupCertificate pg = verify_p_group(rep, job.p, budget);
  const DetGroup dg = det_group(rep);
  json dets = json::array();
  for (const auto& g : rep.generators()) dets.push_back(g.determinant().to_string());
  cert = {{"generator_determinants", dets}};
  return {{"is_p_group", pg.is_p_group},
          {"permutation_group_order", pg.permutation_group_order},
          {"permutation_condition", pg.permutation_condition},
          {"max_diagonal_order", pg.max_diagonal_order},
          {"diagonal_condition", pg.diagonal_condition},
          {"det_group", det_group_json(dg)}};
}

inline json cmd_rep_eigenvalues(const JobSpec& job, json& inputs, json& cert) {
  const MonomialRep rep = io::load_rep(job.rep, infer_m(job, 2));
  const FreeWord w = parse_word(job.word.empty() ? "[x1,x2]" : job.word);
  inputs = {{"rep_source", job.rep}, {"rep", io::to_json(rep)}, {"word", w.to_string()}};
  const MonomialMatrix mm = evaluate_word(rep, w);
  const auto zs = eigenvalues(mm);
  RootOfUnity prod;
  for (const auto& z : zs) prod = prod * z;
  cert = {{"eigenvalue_product", prod.to_string()}, {"determinant", mm.determinant().to_string()}};
  return {{"matrix", io::to_json(mm)}, {"eigenvalues", eigen_json(zs)}};
}

inline json cmd_torsion_boundary(const JobSpec& job, json& inputs, json& cert, bool slice_check) {
  const BoundarySeifertMatrix a = io::load_seifert(job.seifert);
  if (auto v = validate_seifert(a); !v.empty()) fail(ErrorCode::InvalidSeifert, v.front());
  const int m = a.components();
  const MonomialRep rep = io::load_rep(job.rep, m);
  const PsiMap psi = job.psi.empty() ? PsiMap::identity(m) : io::load_psi(job.psi);
  const std::size_t budget = resolve_budget(job, kDefaultFactorSearchBudget);
  inputs = {{"seifert_source", job.seifert}, {"seifert", io::to_json(a)}, {"rep_source", job.rep},
            {"rep", io::to_json(rep)},       {"psi", io::to_json(psi)}};
  if (slice_check) inputs["factor_search_budget"] = budget;
  const TorsionClass t = boundary_torsion(a, rep, psi);
  json result = torsion_json(t);
  result["rank_of_link"] = rank_of_link(a, rep, psi);
  result["expected_rank"] = static_cast<long>(rep.size()) * (m - 1);
  cert = torsion_certificate(&a, rep, psi);
  if (!slice_check) return result;

  const SliceCheck sc = slice_consequence_check(t, rep, psi, m, budget);
  json check = {{"status", to_string(sc.status)},
                {"reason", sc.reason},
                {"ratio", io::to_json(sc.ratio)},
                {"inverted", sc.inverted}};
  check["simplified"] = sc.simplified ? io::to_json(*sc.simplified) : json(nullptr);
  check["norm"] = sc.norm ? io::to_json(*sc.norm) : json(nullptr);
  if (sc.fox_milnor) {
    json factor = json::array();
    for (const auto& c : sc.fox_milnor->factor) factor.push_back(io::to_json(c));
    check["fox_milnor"] = {{"status", to_string(sc.fox_milnor->status)},
                           {"factor", factor},
                           {"square_root_content", io::to_json(sc.fox_milnor->square_root_content)},
                           {"reason", sc.fox_milnor->reason}};
  } else {
    check["fox_milnor"] = nullptr;
  }
  result["slice_check"] = check;
  return result;
}

inline json cmd_torsion_unlink(const JobSpec& job, json& inputs, json& cert) {
  const PsiMap psi = job.psi.empty() ? PsiMap::identity(infer_m(job, 1)) : io::load_psi(job.psi);
  const int m = infer_m(job, psi.components());
  const MonomialRep rep = io::load_rep(job.rep, m);
  inputs = {{"m", m}, {"rep_source", job.rep}, {"rep", io::to_json(rep)}, {"psi", io::to_json(psi)}};
  const TorsionClass t = unlink_torsion(m, rep, psi);
  cert = torsion_certificate(nullptr, rep, psi);
  return torsion_json(t);
}

inline std::pair<IntMatrix, std::string> knot_seifert_input(const JobSpec& job) {
  const std::string& src = !job.knot.empty() ? job.knot : job.seifert;
  if (src.empty()) fail(ErrorCode::InvalidArgument, "a knot name or Seifert file is required");
  if (auto k = builtin_knot(src)) return {k->seifert.b, src};
  const io::json j = io::read_json_file(src);
  if (j.contains("seifert")) return {io::int_matrix_from_json(j.at("seifert")), src};
  const BoundarySeifertMatrix a = io::seifert_from_json(j);
  if (a.components() != 1) fail(ErrorCode::DimensionMismatch, "a knot Seifert matrix has m = 1");
  return {a.full(), src};
}

inline json cmd_alexander(const JobSpec& job, json& inputs, json& cert) {
  const auto [b, src] = knot_seifert_input(job);
  inputs = {{"source", src}, {"seifert", io::to_json(b)}};
  const AlexanderPoly d = alexander_from_seifert({b});
  const auto pt = check_point(1);
  Matrix<Rational> ev(b.rows(), b.cols(), Rational(0));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) ev(i, j) = Rational(b(j, i)) - Rational(b(i, j)) * pt[0];
  cert = {{"check_point", point_json(pt)}, {"determinant_at_point", io::to_json(field_determinant(ev, Rational(1)))}};
  Integer at_one = 0;
  for (const auto& c : d.coefficients()) at_one += c;
  return {{"coefficients", io::to_json(d)}, {"polynomial", d.to_string()}, {"value_at_one", at_one.get_si()}};
}

inline json factor_json(const SatelliteFactor& f) {
  json values = json::array();
  for (const auto& v : f.values) values.push_back(io::to_json(v));
  return {{"status", f.status == FactorStatus::Ok ? "OK" : "RANK_JUMPS"},
          {"eigenvalues", eigen_json(f.eigenvalues)},
          {"values", values},
          {"vanishing", eigen_json(f.vanishing)},
          {"conductor", f.conductor},
          {"product", io::to_json(f.product)}};
}

inline json cmd_satellite_factor(const JobSpec& job, json& inputs, json& cert) {
  const MonomialRep rep = io::load_rep(job.rep, infer_m(job, 2));
  const AlexanderPoly d = io::load_companion(job.knot);
  const FreeWord axis = parse_word(job.word.empty() ? "[x1,x2]" : job.word);
  std::optional<PsiMap> psi;
  if (!job.psi.empty()) psi = io::load_psi(job.psi);
  inputs = {{"rep_source", job.rep}, {"rep", io::to_json(rep)}, {"companion_source", job.knot},
            {"alexander", io::to_json(d)}, {"axis", axis.to_string()}};
  inputs["psi"] = psi ? io::to_json(*psi) : json(nullptr);
  const SatelliteFactor f = satellite_factor(rep, axis, d, psi ? &*psi : nullptr);
  cert = factor_json(f);
  cert["dense_determinant"] = io::to_json(f.dense_check);
  json result = factor_json(f);
  auto q = f.product.as_rational();
  result["rational_product"] = q ? io::to_json(*q) : json(nullptr);
  return result;
}

inline json cmd_satellite_bing(const JobSpec& job, json& inputs, json& cert) {
  const MonomialRep rep = io::load_rep(job.rep, 2);
  const AlexanderPoly d = io::load_companion(job.knot);
  const std::size_t budget = resolve_budget(job, kDefaultClosureBudget);
  inputs = {{"rep_source", job.rep},      {"rep", io::to_json(rep)}, {"companion_source", job.knot},
            {"alexander", io::to_json(d)}, {"p", job.p},              {"closure_budget", budget},
            {"trial_bound", job.trial_bound}};
  const BingResult b = bing_double_obstruction(d, rep, job.p, budget, job.trial_bound);
  json result = {{"verdict", to_string(b.verdict)}, {"reason", b.reason}, {"axis", "[x1,x2]"}};
  result["eigenvalues"] = eigen_json(b.factor.eigenvalues);
  result["product"] = io::to_json(b.factor.product);
  result["rational_product"] = b.rational_product ? io::to_json(*b.rational_product) : json(nullptr);
  result["obstruction_prime"] =
      b.norm && b.norm->obstruction ? io::to_json(b.norm->obstruction->prime) : json(nullptr);
  result["p_group"] = {{"is_p_group", b.p_group.is_p_group},
                       {"permutation_group_order", b.p_group.permutation_group_order},
                       {"max_diagonal_order", b.p_group.max_diagonal_order}};
  result["det_group"] = det_group_json(b.det);
  cert = factor_json(b.factor);
  cert["dense_determinant"] = io::to_json(b.factor.dense_check);
  cert["norm"] = b.norm ? io::to_json(*b.norm) : json(nullptr);
  return result;
}

inline json cmd_norm_test(const JobSpec& job, json& inputs, json& cert) {
  const Rational x = parse_rational(job.value);
  inputs = {{"value", io::to_json(x)},
            {"conductor", job.conductor},
            {"allow_negative", !job.positive_only},
            {"trial_bound", job.trial_bound}};
  const NormVerdict v = norm_class_in_conductor(x, job.conductor, !job.positive_only, job.trial_bound);
  json out = io::to_json(v);
  cert = {{"witness", out["witness"]}, {"obstruction", out["obstruction"]}, {"factorization", out["factorization"]}};
  return out;
}

}  // namespace detail

struct VerifyOutcome {
  bool ok = true;
  std::vector<std::string> checks;
  std::vector<std::string> failures;

  void expect(bool cond, const std::string& what) {
    (cond ? checks : failures).push_back(what);
    ok = ok && cond;
  }
};

namespace detail {

inline void verify_norm(const json& v, VerifyOutcome& out) {
  if (v.is_null()) return;
  const Rational absolute = io::rational_from_json(v.at("absolute"));
  if (!v.at("witness").is_null()) {
    const Cyclotomic q = io::cyclotomic_from_json(v.at("witness"));
    out.expect(hermitian_square(q).as_rational() == std::optional<Rational>(absolute),
               "witness q satisfies q * conj(q) = " + format_rational(absolute));
  }
  Integer product = 1;
  for (const auto& pp : v.at("factorization")) {
    Integer p(pp.at("prime").get<std::string>());
    for (unsigned long i = 0; i < pp.at("multiplicity").get<unsigned long>(); ++i) product *= p;
  }
  if (!v.at("factorization").empty())
    out.expect(product == absolute.get_num() * absolute.get_den(), "factorization multiplies back to the target");
  if (!v.at("obstruction").is_null()) {
    const Integer p(v.at("obstruction").at("prime").get<std::string>());
    const unsigned long mult = v.at("obstruction").at("multiplicity").get<unsigned long>();
    Integer n = absolute.get_num() * absolute.get_den();
    unsigned long count = 0;
    while (n % p == 0) {
      n /= p;
      ++count;
    }
    out.expect(count == mult && mult % 2 == 1, "obstruction prime " + p.get_str() + " divides to odd multiplicity");
    out.expect(!represent_prime_or_certify(p).first.has_value(),
               "prime " + p.get_str() + " is not a hermitian square");
  }
}

inline void verify_torsion(const json& inputs, const json& result, const json& cert, bool with_seifert,
                           VerifyOutcome& out) {
  const MonomialRep rep = io::rep_from_json(inputs.at("rep"));
  const PsiMap psi = io::psi_from_json(inputs.at("psi"));
  const auto pt = point_from_json(cert.at("check_point"));
  const CycPoly det = io::cyc_poly_from_json(cert.at("determinant"), psi.rank());
  const CycPoly mer = io::cyc_poly_from_json(cert.at("meridian_product"), psi.rank());
  const Cyclotomic zero(rep.conductor());
  const Cyclotomic det_pt = with_seifert
                                ? twisted_det_at(io::seifert_from_json(inputs.at("seifert")), rep, psi, pt)
                                : Cyclotomic::one(rep.conductor());
  out.expect(det_pt == io::cyclotomic_from_json(cert.at("determinant_at_point")) && det.evaluate_rational(pt, zero) == det_pt,
             "determinant recomputed at the check point");
  const Cyclotomic mer_pt = meridian_product_at(rep, psi, pt);
  out.expect(mer_pt == io::cyclotomic_from_json(cert.at("meridian_product_at_point")) &&
                 mer.evaluate_rational(pt, zero) == mer_pt,
             "meridian product recomputed at the check point");
  const CycRational value(io::cyc_poly_from_json(result.at("value").at("numerator"), psi.rank()),
                          io::cyc_poly_from_json(result.at("value").at("denominator"), psi.rank()));
  // the canonical value equals det / meridian product up to a signed monomial
  const CycRational raw(det, mer);
  const auto ratio = (value / raw).as_laurent();
  bool unit = false;
  if (ratio)
    if (auto mono = ratio->as_monomial()) {
      auto r = mono->second.as_rational();
      unit = r && (*r == 1 || *r == -1);
    }
  out.expect(unit, "reported value is det / meridian product up to +-t^h");
}

}  // namespace detail

/// Re-checks the certificate of a report: witnesses are re-multiplied,
/// determinants recomputed exactly at the recorded point, eigenvalue
/// products rebuilt from the echoed inputs.
inline VerifyOutcome verify_report(const io::json& report) {
  using io::json;
  VerifyOutcome out;
  if (!report.is_object() || report.value("schema", 0) != kReportSchema) {
    out.expect(false, "report has schema 1");
    return out;
  }
  if (report.contains("error")) {
    out.expect(false, "report carries a result");
    return out;
  }
  const std::string cmd = report.at("command");
  const json& inputs = report.at("inputs");
  const json& result = report.at("result");
  const json& cert = report.at("certificate");
  if (cmd == "torsion boundary" || cmd == "torsion slice-check") {
    detail::verify_torsion(inputs, result, cert, true, out);
    if (result.contains("slice_check")) detail::verify_norm(result.at("slice_check").at("norm"), out);
  } else if (cmd == "torsion unlink") {
    detail::verify_torsion(inputs, result, cert, false, out);
  } else if (cmd == "norm test") {
    detail::verify_norm(result, out);
  } else if (cmd == "satellite bing" || cmd == "satellite factor") {
    const MonomialRep rep = io::rep_from_json(inputs.at("rep"));
    std::vector<Integer> coeffs;
    for (const auto& c : inputs.at("alexander")) coeffs.emplace_back(c.get<long>());
    const AlexanderPoly d(coeffs);
    const FreeWord axis = parse_word(cmd == "satellite bing" ? "[x1,x2]" : inputs.at("axis").get<std::string>());
    const auto zs = eigenvalues(evaluate_word(rep, axis));
    out.expect(detail::eigen_json(zs) == cert.at("eigenvalues"), "eigenvalues recomputed from the representation");
    const long n = cert.at("conductor").get<long>();
    Cyclotomic prod = Cyclotomic::one(n);
    for (const auto& z : zs) prod *= promote(d.evaluate(z), n);
    out.expect(prod == io::cyclotomic_from_json(cert.at("product")), "eigenvalue product recomputed");
    const Cyclotomic dense = promote(dense_polynomial_determinant(d, evaluate_word(rep, axis), rep.conductor()), n);
    out.expect(dense == prod && dense == io::cyclotomic_from_json(cert.at("dense_determinant")),
               "dense determinant of Delta(alpha(axis)) agrees");
    if (cert.contains("norm")) detail::verify_norm(cert.at("norm"), out);
  } else if (cmd == "alexander from-seifert") {
    const IntMatrix b = io::int_matrix_from_json(inputs.at("seifert"));
    const auto pt = detail::point_from_json(cert.at("check_point"));
    Matrix<Rational> ev(b.rows(), b.cols(), Rational(0));
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) ev(i, j) = Rational(b(j, i)) - Rational(b(i, j)) * pt[0];
    const Rational det = field_determinant(ev, Rational(1));
    out.expect(det == io::rational_from_json(cert.at("determinant_at_point")), "det(B^t - B t) recomputed at the check point");
    std::vector<Integer> coeffs;
    for (const auto& c : result.at("coefficients")) coeffs.emplace_back(c.get<long>());
    Rational value = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) value = value * pt[0] + Rational(coeffs[j]);
    // det = +-t^l Delta(t); l is pinned by the degree of B
    bool matched = false;
    Rational tp = 1;
    for (std::size_t l = 0; l <= b.rows() && !matched; ++l, tp *= pt[0])
      matched = det == value * tp || det == -value * tp;
    out.expect(matched, "Delta matches the determinant at the check point up to +-t^l");
  } else if (cmd == "rep verify") {
    const MonomialRep rep = io::rep_from_json(inputs.at("rep"));
    const PGroupCertificate pg = verify_p_group(rep, inputs.at("p").get<long>(), inputs.at("closure_budget").get<std::size_t>());
    out.expect(pg.is_p_group == result.at("is_p_group").get<bool>() &&
                   pg.permutation_group_order == result.at("permutation_group_order").get<std::size_t>(),
               "p-group closure recomputed");
    out.expect(detail::det_group_json(det_group(rep)) == result.at("det_group"), "determinant group recomputed");
  } else if (cmd == "rep eigenvalues") {
    const MonomialRep rep = io::rep_from_json(inputs.at("rep"));
    const auto zs = eigenvalues(evaluate_word(rep, parse_word(inputs.at("word").get<std::string>())));
    out.expect(detail::eigen_json(zs) == result.at("eigenvalues"), "eigenvalues recomputed");
  } else {
    out.expect(false, "known command '" + cmd + "'");
  }
  return out;
}

/// Runs one job. Library errors become error reports with their code.
inline JobResult run(const JobSpec& job) {
  using io::json;
  JobResult out;
  json inputs = json::object(), cert = json::object(), result;
  try {
    const std::string& c = job.command;
    if (c == "rep verify") result = detail::cmd_rep_verify(job, inputs, cert);
    else if (c == "rep eigenvalues") result = detail::cmd_rep_eigenvalues(job, inputs, cert);
    else if (c == "torsion boundary") result = detail::cmd_torsion_boundary(job, inputs, cert, false);
    else if (c == "torsion slice-check") result = detail::cmd_torsion_boundary(job, inputs, cert, true);
    else if (c == "torsion unlink") result = detail::cmd_torsion_unlink(job, inputs, cert);
    else if (c == "alexander from-seifert") result = detail::cmd_alexander(job, inputs, cert);
    else if (c == "satellite factor") result = detail::cmd_satellite_factor(job, inputs, cert);
    else if (c == "satellite bing") result = detail::cmd_satellite_bing(job, inputs, cert);
    else if (c == "norm test") result = detail::cmd_norm_test(job, inputs, cert);
    else if (c == "report verify") {
      inputs = {{"report", job.report}};
      const VerifyOutcome v = verify_report(io::read_json_file(job.report));
      result = {{"verified", v.ok}, {"checks", v.checks}, {"failures", v.failures}};
      if (!v.ok) out.exit_code = kExitVerificationFailed;
    } else {
      fail(ErrorCode::InvalidArgument, "unknown command '" + c + "'");
    }
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.code());
    out.report = {{"schema", kReportSchema},
                  {"command", job.command},
                  {"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
    return out;
  } catch (const json::exception& e) {
    out.exit_code = kExitInputError;
    out.report = {{"schema", kReportSchema},
                  {"command", job.command},
                  {"error", {{"code", to_string(ErrorCode::ParseError)}, {"message", e.what()}}}};
    return out;
  }
  out.report = {{"schema", kReportSchema}, {"command", job.command}, {"inputs", inputs}, {"result", result}};
  if (!cert.empty()) out.report["certificate"] = cert;
  return out;
}

}  // namespace sliceob
