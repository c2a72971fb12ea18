#include "esoclcp/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace esoclcp::io {

namespace {

constexpr const char *kProblemFormat = "esoclcp-problem";
constexpr const char *kSolutionFormat = "esoclcp-solution";
constexpr const char *kReportFormat = "esoclcp-report";

[[noreturn]] void fail(const std::string &field, const std::string &msg) {
  throw Error(ErrorKind::Parse, "field '" + field + "': " + msg);
}

// JSON has no encoding for non-finite doubles; they travel as strings.
Json number(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const Json &j, const std::string &field) {
  if (j.is_number())
    return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan")
      return std::nan("");
    if (s == "inf")
      return HUGE_VAL;
    if (s == "-inf")
      return -HUGE_VAL;
  }
  fail(field, "expected a number");
}

Json vector_json(const Vector<double> &v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    arr.push_back(number(v(i)));
  return arr;
}

Vector<double> read_vector(const Json &obj, const std::string &field, Eigen::Index expected) {
  if (!obj.contains(field))
    fail(field, "missing");
  const Json &arr = obj.at(field);
  if (!arr.is_array())
    fail(field, "expected an array");
  if (expected >= 0 && static_cast<Eigen::Index>(arr.size()) != expected)
    fail(field, "expected " + std::to_string(expected) + " entries, got " + std::to_string(arr.size()));
  Vector<double> v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = read_number(arr[i], field + "[" + std::to_string(i) + "]");
  return v;
}

Eigen::Index read_dim(const Json &obj, const std::string &field) {
  if (!obj.contains(field))
    fail(field, "missing");
  const Json &v = obj.at(field);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    fail(field, "expected a positive integer");
  return static_cast<Eigen::Index>(v.get<long long>());
}

std::string read_comment(const Json &obj) {
  if (!obj.contains("comment") || obj.at("comment").is_null())
    return {};
  if (!obj.at("comment").is_string())
    fail("comment", "expected a string");
  return obj.at("comment").get<std::string>();
}

void require_object(const Json &j, const std::string &what) {
  if (!j.is_object())
    fail(what, "expected a JSON object");
}

} // namespace

LcpProblem<double> ProblemFile::to_problem(bool check_nonsingular) const {
  return LcpProblem<double>(EsocDims(k, l), T, r, check_nonsingular);
}

Json to_json(const ProblemFile &problem) {
  Json j;
  j["format"] = kProblemFormat;
  j["k"] = problem.k;
  j["l"] = problem.l;
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < problem.T.rows(); ++i)
    rows.push_back(vector_json(problem.T.row(i).transpose()));
  j["T"] = rows;
  j["r"] = vector_json(problem.r);
  if (!problem.comment.empty())
    j["comment"] = problem.comment;
  return j;
}

ProblemFile problem_from_json(const Json &j) {
  require_object(j, "<root>");
  ProblemFile out;
  out.k = read_dim(j, "k");
  out.l = read_dim(j, "l");
  const Eigen::Index m = out.k + out.l;
  if (!j.contains("T"))
    fail("T", "missing");
  const Json &rows = j.at("T");
  if (!rows.is_array())
    fail("T", "expected an array of rows");
  if (static_cast<Eigen::Index>(rows.size()) != m)
    fail("T", "expected " + std::to_string(m) + " rows for k + l = " + std::to_string(m) + ", got " +
                  std::to_string(rows.size()));
  out.T.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Json &row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m)
      fail("T", "row " + std::to_string(i) + " must have " + std::to_string(m) +
                    " entries (T must be square)");
    for (Eigen::Index c = 0; c < m; ++c)
      out.T(i, c) = read_number(row[static_cast<std::size_t>(c)],
                                "T[" + std::to_string(i) + "][" + std::to_string(c) + "]");
  }
  out.r = read_vector(j, "r", m);
  out.comment = read_comment(j);
  return out;
}

Json to_json(const SolutionFile &solution) {
  Json j;
  j["format"] = kSolutionFormat;
  j["k"] = solution.k;
  j["l"] = solution.l;
  j["x"] = vector_json(solution.x);
  j["u"] = vector_json(solution.u);
  if (!solution.comment.empty())
    j["comment"] = solution.comment;
  return j;
}

SolutionFile solution_from_json(const Json &j) {
  require_object(j, "<root>");
  SolutionFile out;
  out.k = read_dim(j, "k");
  out.l = read_dim(j, "l");
  out.x = read_vector(j, "x", out.k);
  out.u = read_vector(j, "u", out.l);
  out.comment = read_comment(j);
  return out;
}

Json to_json(const ReportFile &report) {
  Json j;
  j["format"] = kReportFormat;
  j["status"] = report.status;
  j["case_label"] = report.case_label;
  j["verified"] = report.verified;
  j["certified"] = report.certified;
  j["point"] = {{"xhat", vector_json(report.xhat)}, {"u", vector_json(report.u)}, {"t", number(report.t)}};
  if (report.recovered)
    j["recovered"] = {{"x", vector_json(report.recovered->x)}, {"u", vector_json(report.recovered->u)}};
  else
    j["recovered"] = nullptr;
  j["residual_norm"] = number(report.residual_norm);
  j["iterations"] = report.iterations;
  Json hist = Json::array();
  for (double h : report.residual_history)
    hist.push_back(number(h));
  j["residual_history"] = hist;
  j["note"] = report.note;
  j["options"] = {{"method", report.method}, {"mu", number(report.mu)},        {"tol", number(report.tol)},
                  {"seed", report.seed},     {"max_iter", report.max_iter}, {"starts", report.starts}};
  return j;
}

ReportFile report_from_json(const Json &j) {
  require_object(j, "<root>");
  try {
    ReportFile out;
    out.status = j.at("status").get<std::string>();
    out.case_label = j.at("case_label").get<std::string>();
    out.verified = j.at("verified").get<bool>();
    out.certified = j.at("certified").get<bool>();
    const Json &point = j.at("point");
    out.xhat = read_vector(point, "xhat", -1);
    out.u = read_vector(point, "u", -1);
    out.t = read_number(point.at("t"), "point.t");
    if (!j.at("recovered").is_null()) {
      const Json &rec = j.at("recovered");
      out.recovered = PointZ<double>{read_vector(rec, "x", -1), read_vector(rec, "u", -1)};
    }
    out.residual_norm = read_number(j.at("residual_norm"), "residual_norm");
    out.iterations = j.at("iterations").get<int>();
    for (const auto &h : j.at("residual_history"))
      out.residual_history.push_back(read_number(h, "residual_history"));
    out.note = j.at("note").get<std::string>();
    const Json &opts = j.at("options");
    out.method = opts.at("method").get<std::string>();
    out.mu = read_number(opts.at("mu"), "options.mu");
    out.tol = read_number(opts.at("tol"), "options.tol");
    out.seed = opts.at("seed").get<std::uint64_t>();
    out.max_iter = opts.at("max_iter").get<int>();
    out.starts = opts.at("starts").get<int>();
    return out;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::Parse, std::string("report: ") + e.what());
  }
}

ReportFile make_report(const SolveReport<double> &report, const SolverOptions<double> &opts) {
  ReportFile out;
  out.status = to_string(report.status);
  out.case_label = to_string(report.case_label);
  out.verified = report.verified;
  out.certified = report.certified;
  out.xhat = report.point.xhat;
  out.u = report.point.u;
  out.t = report.point.t;
  out.recovered = report.recovered;
  out.residual_norm = report.residual_norm;
  out.iterations = report.iterations;
  out.residual_history = report.residual_history;
  out.note = report.note;
  out.method = to_string(opts.method);
  out.mu = opts.mu;
  out.tol = opts.residual_tol;
  out.seed = opts.rng_seed;
  out.max_iter = opts.max_iter;
  out.starts = opts.num_random_starts;
  return out;
}

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorKind::Parse, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
  out << text;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

} // namespace esoclcp::io
