#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "oracles.hpp"

using namespace sliceob;
using io::json;

namespace {

const std::string kFixture = std::string(SLICEOB_FIXTURE_DIR) + "/bing_fig8_rep.json";

JobSpec bing_job() {
  JobSpec job;
  job.command = "satellite bing";
  job.rep = kFixture;
  job.knot = "fig8";
  return job;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sliceob_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::filesystem::path write_json(const std::string& name, const json& j) {
  const auto path = scratch(name);
  std::ofstream(path) << j.dump(2);
  return path;
}

std::string error_code(const JobResult& r) { return r.report.at("error").at("code"); }

}  // namespace

TEST(Run, BingReport) {
  const JobResult r = run(bing_job());
  ASSERT_EQ(r.exit_code, kExitOk) << r.report.dump(2);
  EXPECT_EQ(r.report.at("schema"), 1);
  EXPECT_EQ(r.report.at("command"), "satellite bing");
  const json& res = r.report.at("result");
  EXPECT_EQ(res.at("verdict"), "NOT_SLICE");
  EXPECT_EQ(io::rational_from_json(res.at("rational_product")), Rational(2115));
  EXPECT_EQ(res.at("obstruction_prime"), io::to_json(Integer(47)));
  std::multiset<std::string> zs(res.at("eigenvalues").begin(), res.at("eigenvalues").end());
  EXPECT_EQ(zs, (std::multiset<std::string>{"0/1", "1/2", "1/4", "3/4", "1/16", "9/16", "3/16", "11/16"}));
  EXPECT_TRUE(verify_report(r.report).ok);
}

TEST(Run, ReportsAreByteIdentical) {
  EXPECT_EQ(run(bing_job()).report.dump(2), run(bing_job()).report.dump(2));
  JobSpec t;
  t.command = "torsion slice-check";
  t.seifert = "fig8";
  t.rep = "trivial1";
  EXPECT_EQ(run(t).report.dump(), run(t).report.dump());
}

TEST(Run, EveryCommandProducesAVerifiableReport) {
  std::vector<JobSpec> jobs;
  auto add = [&](std::string cmd, auto&& set) {
    JobSpec j;
    j.command = std::move(cmd);
    set(j);
    jobs.push_back(j);
  };
  add("rep verify", [](JobSpec& j) { j.rep = kFixture; });
  add("rep eigenvalues", [](JobSpec& j) { j.rep = kFixture; });
  add("torsion boundary", [](JobSpec& j) { j.seifert = "trefoil"; j.rep = "trivial1"; });
  add("torsion slice-check", [](JobSpec& j) { j.seifert = "fig8"; j.rep = "trivial1"; });
  add("torsion unlink", [](JobSpec& j) { j.m = 2; j.rep = "trivial1"; });
  add("alexander from-seifert", [](JobSpec& j) { j.knot = "fig8"; });
  add("satellite factor", [](JobSpec& j) { j.rep = kFixture; j.knot = "trefoil"; j.psi = "id2"; });
  add("satellite bing", [](JobSpec& j) { j.rep = kFixture; j.knot = "fig8"; });
  add("norm test", [](JobSpec& j) { j.value = "45"; });
  add("norm test", [](JobSpec& j) { j.value = "2115"; });
  for (const auto& job : jobs) {
    const JobResult r = run(job);
    ASSERT_EQ(r.exit_code, kExitOk) << job.command << ": " << r.report.dump(2);
    const VerifyOutcome v = verify_report(r.report);
    EXPECT_TRUE(v.ok) << job.command << ": " << json(v.failures).dump();
    EXPECT_FALSE(v.checks.empty()) << job.command;
  }
}

TEST(Run, TamperedReportsFailVerification) {
  json report = run(bing_job()).report;
  report["certificate"]["product"] = io::to_json(Cyclotomic::rational(16, 2114));
  EXPECT_FALSE(verify_report(report).ok);

  JobSpec n;
  n.command = "norm test";
  n.value = "45";
  json norm = run(n).report;
  norm["result"]["witness"] = io::to_json(Cyclotomic::rational(8, 7));
  EXPECT_FALSE(verify_report(norm).ok);

  JobSpec t;
  t.command = "torsion boundary";
  t.seifert = "trefoil";
  t.rep = "trivial1";
  json tor = run(t).report;
  tor["certificate"]["determinant_at_point"] = io::to_json(Cyclotomic::rational(1, 5));
  EXPECT_FALSE(verify_report(tor).ok);

  EXPECT_FALSE(verify_report(json{{"schema", 2}}).ok);
}

TEST(Run, ReportVerifyCommand) {
  const auto good = write_json("good.json", run(bing_job()).report);
  JobSpec v;
  v.command = "report verify";
  v.report = good.string();
  const JobResult ok = run(v);
  EXPECT_EQ(ok.exit_code, kExitOk);
  EXPECT_TRUE(ok.report.at("result").at("verified").get<bool>());

  json bad = run(bing_job()).report;
  bad["certificate"]["eigenvalues"][0] = "1/3";
  v.report = write_json("bad.json", bad).string();
  EXPECT_EQ(run(v).exit_code, kExitVerificationFailed);
}

TEST(Run, UnlinkExample) {
  JobSpec j;
  j.command = "torsion unlink";
  j.m = 2;
  j.rep = "trivial1";
  const JobResult r = run(j);
  ASSERT_EQ(r.exit_code, kExitOk);
  const json& value = r.report.at("result").at("value");
  const CycRational got(io::cyc_poly_from_json(value.at("numerator"), 2),
                        io::cyc_poly_from_json(value.at("denominator"), 2));
  using Poly = LaurentPoly<Cyclotomic>;
  const Cyclotomic one = Cyclotomic::one(1);
  const Poly d = (Poly::constant(2, one) - Poly::variable(2, 1, one)) * (Poly::constant(2, one) - Poly::variable(2, 2, one));
  const auto ratio = (got / CycRational(Poly::constant(2, one), d)).as_laurent();
  ASSERT_TRUE(ratio.has_value());
  const auto mono = ratio->as_monomial();
  ASSERT_TRUE(mono.has_value());
  const auto c = mono->second.as_rational();
  EXPECT_TRUE(c == std::optional<Rational>(1) || c == std::optional<Rational>(-1));
}

TEST(Run, ErrorsMapToExitCodes) {
  JobSpec missing = bing_job();
  missing.rep = "/nonexistent/rep.json";
  JobResult r = run(missing);
  EXPECT_EQ(r.exit_code, kExitInputError);
  EXPECT_EQ(error_code(r), "PARSE_ERROR");
  EXPECT_FALSE(r.report.contains("result"));

  const auto garbled = scratch("garbled.json");
  std::ofstream(garbled) << "{\"generators\": [";
  missing.rep = garbled.string();
  EXPECT_EQ(run(missing).exit_code, kExitInputError);

  JobSpec bad_seifert;
  bad_seifert.command = "torsion boundary";
  bad_seifert.seifert = write_json("bad_seifert.json", {{"m", 1}, {"blocks", {{{{1, 0}, {0, 1}}}}}}).string();
  bad_seifert.rep = "trivial1";
  r = run(bad_seifert);
  EXPECT_EQ(r.exit_code, kExitValidationError);
  EXPECT_EQ(error_code(r), "INVALID_SEIFERT");

  JobSpec s3;
  s3.command = "satellite bing";
  s3.rep = write_json("s3.json", io::to_json(MonomialRep({MonomialMatrix({1, 2, 0}, std::vector<RootOfUnity>(3)),
                                                          MonomialMatrix({1, 0, 2}, std::vector<RootOfUnity>(3))})))
               .string();
  s3.knot = "fig8";
  r = run(s3);
  EXPECT_EQ(r.exit_code, kExitValidationError);
  EXPECT_EQ(error_code(r), "NOT_P_GROUP");

  JobSpec tight = bing_job();
  tight.budget = 3;
  r = run(tight);
  EXPECT_EQ(r.exit_code, kExitBudgetExceeded);
  EXPECT_EQ(error_code(r), "CLOSURE_BUDGET_EXCEEDED");

  JobSpec unknown;
  unknown.command = "frobnicate";
  EXPECT_EQ(run(unknown).exit_code, kExitInputError);

  EXPECT_EQ(exit_code_for(ErrorCode::CrossCheckMismatch), kExitInternalError);
  EXPECT_EQ(exit_code_for(ErrorCode::RankTooLarge), kExitValidationError);
  EXPECT_EQ(exit_code_for(ErrorCode::FactorizationBudgetExceeded), kExitBudgetExceeded);
}

TEST(Run, BudgetFromEnvironment) {
  ::setenv("TORSION_SEARCH_BUDGET", "3", 1);
  EXPECT_EQ(budget_from_env(), std::optional<std::size_t>(3));
  EXPECT_EQ(run(bing_job()).exit_code, kExitBudgetExceeded);
  // an explicit budget wins over the environment
  JobSpec wide = bing_job();
  wide.budget = 100000;
  EXPECT_EQ(run(wide).exit_code, kExitOk);
  ::unsetenv("TORSION_SEARCH_BUDGET");
  EXPECT_FALSE(budget_from_env().has_value());
  EXPECT_EQ(run(bing_job()).exit_code, kExitOk);
}

TEST(Run, NormTestSigns) {
  JobSpec j;
  j.command = "norm test";
  j.value = "-45";
  EXPECT_EQ(run(j).report.at("result").at("status"), "MEMBER");
  j.positive_only = true;
  EXPECT_EQ(run(j).report.at("result").at("status"), "NOT_MEMBER");
  j.value = "1/0";
  EXPECT_EQ(run(j).exit_code, kExitInputError);
}

#ifdef SLICEOB_CLI_PATH

namespace {

int run_cli(const std::string& args, const std::filesystem::path& out) {
  const std::string cmd = std::string("\"") + SLICEOB_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Binary, BingAndExitCodes) {
  const auto out = scratch("cli_out.json");
  const auto report = scratch("cli_report.json");
  EXPECT_EQ(run_cli("satellite bing --rep " + kFixture + " --knot fig8 -o " + report.string(), out), 0);
  const json j = io::read_json_file(report.string());
  EXPECT_EQ(j.at("result").at("verdict"), "NOT_SLICE");
  EXPECT_EQ(run_cli("report verify " + report.string(), out), 0);

  EXPECT_EQ(run_cli("satellite bing --rep /nonexistent.json --knot fig8", out), 2);
  EXPECT_EQ(run_cli("satellite bing --rep " + kFixture + " --knot fig8 --budget 3", out), 4);
  EXPECT_EQ(run_cli("torsion boundary --seifert fig8 --rep trivial1", out), 0);
  EXPECT_EQ(run_cli("norm test 2115", out), 0);
  EXPECT_NE(run_cli("no-such-command", out), 0);
}

#endif
