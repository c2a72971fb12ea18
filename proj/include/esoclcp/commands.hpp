#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "esoclcp/io.hpp"

namespace esoclcp::cli {

/// Process exit codes shared by every command.
enum ExitCode : int { kOk = 0, kInputError = 1, kNotSolved = 2 };

/// Names accepted in place of a problem path.
inline constexpr const char *kBuiltinPaper = "example-paper";
inline constexpr const char *kBuiltinPaperReconstructed = "example-paper-reconstructed";

/// Environment variable overriding the default residual tolerance.
inline constexpr const char *kTolEnv = "ESOCLCP_DEFAULT_TOL";

/// Residual tolerance default: ESOCLCP_DEFAULT_TOL if set, else 1e-7.
double default_residual_tol();

/// Built-in fixture name or path to a problem file.
io::ProblemFile load_problem(const std::string &source);

struct SolveArgs {
  std::string problem;
  Method method = Method::LevenbergMarquardt;
  std::optional<double> tol;
  double mu = 0.005;
  int max_iter = 200;
  std::uint64_t seed = 0;
  int starts = 8;
  bool json = false;
  std::optional<std::string> out;
  /// Solve every *.json problem in this directory instead of `problem`.
  std::optional<std::string> batch_dir;
};

struct VerifyArgs {
  std::string problem;
  std::string candidate;
  double tol = 1e-6;
  bool json = false;
};

struct GenArgs {
  Eigen::Index k = 3;
  Eigen::Index l = 2;
  std::string which = "vi";
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  /// Defaults to <out>.solution.json when `out` is given.
  std::optional<std::string> sidecar;
};

struct ExampleArgs {
  bool reconstructed = false;
  std::optional<std::string> out;
};

SolverOptions<double> options_from(const SolveArgs &args);

int cmd_solve(const SolveArgs &args, std::ostream &out, std::ostream &err);
int cmd_verify(const VerifyArgs &args, std::ostream &out, std::ostream &err);
int cmd_gen(const GenArgs &args, std::ostream &out, std::ostream &err);
int cmd_example_paper(const ExampleArgs &args, std::ostream &out, std::ostream &err);

} // namespace esoclcp::cli
