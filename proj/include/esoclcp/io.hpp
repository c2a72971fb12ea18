#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "esoclcp/solvers.hpp"

namespace esoclcp::io {

using Json = nlohmann::json;

/// Problem data as stored on disk: dimensions, row-major T, and r.
struct ProblemFile {
  Eigen::Index k = 0;
  Eigen::Index l = 0;
  Matrix<double> T;
  Vector<double> r;
  std::string comment;

  LcpProblem<double> to_problem(bool check_nonsingular = true) const;
};

/// Candidate or known solution z = (x, u). Shares the problem container
/// layout (k, l, comment) with fields x and u in place of T and r.
struct SolutionFile {
  Eigen::Index k = 0;
  Eigen::Index l = 0;
  Vector<double> x;
  Vector<double> u;
  std::string comment;

  PointZ<double> point() const { return PointZ<double>{x, u}; }
};

/// Serialized solver outcome together with the options that produced it.
struct ReportFile {
  std::string status;
  std::string case_label;
  bool verified = false;
  bool certified = false;
  Vector<double> xhat;
  Vector<double> u;
  double t = 0.0;
  std::optional<PointZ<double>> recovered;
  double residual_norm = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;
  std::string note;
  // options echo
  std::string method;
  double mu = 0.0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  int max_iter = 0;
  int starts = 0;
};

Json to_json(const ProblemFile &problem);
Json to_json(const SolutionFile &solution);
Json to_json(const ReportFile &report);

/// Throws Error(Parse) naming the offending field.
ProblemFile problem_from_json(const Json &j);
SolutionFile solution_from_json(const Json &j);
ReportFile report_from_json(const Json &j);

ReportFile make_report(const SolveReport<double> &report, const SolverOptions<double> &opts);

Json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

/// Canonical text form: two-space indented JSON with a trailing newline.
std::string dump(const Json &j);

} // namespace esoclcp::io
