#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "esoclcp/commands.hpp"

int main(int argc, char **argv) {
  using namespace esoclcp;
  CLI::App app{"Linear complementarity problems on extended second order cones"};
  app.require_subcommand(1);

  cli::SolveArgs solve;
  double tol_flag = 0.0;
  auto *solve_cmd = app.add_subcommand("solve", "Solve a problem file or built-in fixture");
  solve_cmd->add_option("problem", solve.problem, "Problem file, 'example-paper' or 'example-paper-reconstructed'");
  solve_cmd->add_option("--method", solve.method, "newton or lm")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Method>{{"newton", Method::Newton},
                                                                        {"lm", Method::LevenbergMarquardt}},
                                          CLI::ignore_case));
  auto *tol_opt = solve_cmd->add_option("--tol", tol_flag, "Residual tolerance (default 1e-7 or $ESOCLCP_DEFAULT_TOL)");
  solve_cmd->add_option("--mu", solve.mu, "Levenberg-Marquardt damping")->capture_default_str();
  solve_cmd->add_option("--max-iter", solve.max_iter, "Iteration cap per start")->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "Seed for random starts")->capture_default_str();
  solve_cmd->add_option("--starts", solve.starts, "Number of random starts")->capture_default_str();
  solve_cmd->add_flag("--json", solve.json, "Write the JSON report to stdout");
  solve_cmd->add_option("--out", solve.out, "Write the JSON report to this path");
  solve_cmd->add_option("--batch", solve.batch_dir, "Solve every *.json problem in a directory");

  cli::VerifyArgs verify;
  auto *verify_cmd = app.add_subcommand("verify", "Check a candidate z = (x, u) against a problem");
  verify_cmd->add_option("problem", verify.problem, "Problem file or built-in fixture")->required();
  verify_cmd->add_option("candidate", verify.candidate, "Solution file with fields x, u")->required();
  verify_cmd->add_option("--tol", verify.tol, "Complementarity tolerance")->capture_default_str();
  verify_cmd->add_flag("--json", verify.json, "Machine-readable output");

  cli::GenArgs gen;
  auto *gen_cmd = app.add_subcommand("gen", "Generate a seeded instance with a known solution");
  gen_cmd->add_option("--k", gen.k, "Orthant dimension")->capture_default_str();
  gen_cmd->add_option("--l", gen.l, "Norm dimension")->capture_default_str();
  gen_cmd->add_option("--case", gen.which, "i, ii, vi or random")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Problem output path (stdout if omitted)");
  gen_cmd->add_option("--sidecar", gen.sidecar, "Known-solution output path");

  cli::ExampleArgs example;
  auto *example_cmd = app.add_subcommand("example-paper", "Emit the built-in worked example");
  example_cmd->add_flag("--reconstructed", example.reconstructed,
                        "Use the offset vector consistent with the published solution");
  example_cmd->add_option("--out", example.out, "Output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  if (*solve_cmd) {
    if (*tol_opt)
      solve.tol = tol_flag;
    if (solve.problem.empty() && !solve.batch_dir) {
      std::cerr << "error: solve needs a problem or --batch\n";
      return cli::kInputError;
    }
    return cli::cmd_solve(solve, std::cout, std::cerr);
  }
  if (*verify_cmd)
    return cli::cmd_verify(verify, std::cout, std::cerr);
  if (*gen_cmd)
    return cli::cmd_gen(gen, std::cout, std::cerr);
  return cli::cmd_example_paper(example, std::cout, std::cerr);
}
