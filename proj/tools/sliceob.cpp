// Command-line front end: one job per invocation, JSON report on stdout or --output.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sliceob.hpp"

namespace {

using sliceob::JobSpec;

void add_budget(CLI::App* cmd, JobSpec& job, std::size_t& budget) {
  cmd->add_option("--budget", budget, "search budget (also TORSION_SEARCH_BUDGET)")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { job.budget = budget; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted-torsion slice obstructions for links"};
  app.require_subcommand(1);
  app.fallthrough();
  JobSpec job;
  std::string output;
  std::size_t budget = 0;
  app.add_option("-o,--output", output, "write the report to this file");

  auto* rep = app.add_subcommand("rep", "monomial representations")->require_subcommand(1);
  auto* rep_verify = rep->add_subcommand("verify", "p-group check and determinant group");
  rep_verify->add_option("--rep", job.rep, "representation file or trivialK")->required();
  rep_verify->add_option("--p", job.p, "prime")->default_val(2);
  rep_verify->add_option("--m", job.m, "generator count for trivialK");
  add_budget(rep_verify, job, budget);
  auto* rep_eig = rep->add_subcommand("eigenvalues", "eigenvalues of the image of a word");
  rep_eig->add_option("--rep", job.rep, "representation file or trivialK")->required();
  rep_eig->add_option("--word", job.word, "word, e.g. \"[x1,x2]\" or \"x1 X2\"")->default_val("[x1,x2]");
  rep_eig->add_option("--m", job.m, "generator count for trivialK");

  auto* torsion = app.add_subcommand("torsion", "boundary-link torsion")->require_subcommand(1);
  for (const char* name : {"boundary", "slice-check"}) {
    auto* cmd = torsion->add_subcommand(name, std::string(name) == "boundary" ? "torsion from a Seifert matrix"
                                                                             : "compare with the unlink torsion");
    cmd->add_option("--seifert", job.seifert, "Seifert file, knot name or emptyM")->required();
    cmd->add_option("--rep", job.rep, "representation file or trivialK")->required();
    cmd->add_option("--psi", job.psi, "psi file or idN (default: identity)");
    add_budget(cmd, job, budget);
  }
  auto* unlink = torsion->add_subcommand("unlink", "torsion of the m-component unlink");
  unlink->add_option("--m", job.m, "component count");
  unlink->add_option("--rep", job.rep, "representation file or trivialK")->required();
  unlink->add_option("--psi", job.psi, "psi file or idN (default: identity)");

  auto* alexander = app.add_subcommand("alexander", "Alexander polynomials")->require_subcommand(1);
  auto* from_seifert = alexander->add_subcommand("from-seifert", "det(B^t - B t)");
  auto* knot_opt = from_seifert->add_option("--knot", job.knot, "unknot, trefoil or fig8");
  from_seifert->add_option("--seifert", job.seifert, "file with {\"seifert\": [[...]]}")->excludes(knot_opt);

  auto* satellite = app.add_subcommand("satellite", "satellite torsion factors")->require_subcommand(1);
  auto* factor = satellite->add_subcommand("factor", "prod Delta(z) over eigenvalues of alpha(axis)");
  factor->add_option("--rep", job.rep, "representation file or trivialK")->required();
  factor->add_option("--knot", job.knot, "companion: knot name or file")->required();
  factor->add_option("--axis", job.word, "axis word")->default_val("[x1,x2]");
  factor->add_option("--psi", job.psi, "psi file or idN; checks psi(axis) = 0");
  factor->add_option("--m", job.m, "generator count for trivialK");
  auto* bing = satellite->add_subcommand("bing", "Bing-double sliceness obstruction");
  bing->add_option("--rep", job.rep, "representation file or trivialK")->required();
  bing->add_option("--knot", job.knot, "companion: knot name or file")->required();
  bing->add_option("--p", job.p, "prime")->default_val(2);
  bing->add_option("--trial-bound", job.trial_bound, "trial-division bound");
  add_budget(bing, job, budget);

  auto* norm = app.add_subcommand("norm", "norm classes")->require_subcommand(1);
  auto* norm_test = norm->add_subcommand("test", "is x = +-q conj(q)?");
  norm_test->add_option("value", job.value, "integer or p/q")->required();
  norm_test->add_option("--conductor", job.conductor, "coefficient field Q(zeta_n)")->default_val(8);
  norm_test->add_flag("--positive-only", job.positive_only, "do not absorb a sign");
  norm_test->add_option("--trial-bound", job.trial_bound, "trial-division bound");

  auto* report = app.add_subcommand("report", "reports")->require_subcommand(1);
  auto* verify = report->add_subcommand("verify", "re-check the certificate of a report");
  verify->add_option("file", job.report, "report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : sliceob::kExitInputError;
  }

  for (auto* top : app.get_subcommands())
    for (auto* sub : top->get_subcommands()) job.command = top->get_name() + " " + sub->get_name();

  const sliceob::JobResult result = sliceob::run(job);
  const std::string text = result.report.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return sliceob::kExitInputError;
    }
    out << text;
  }
  return result.exit_code;
}
