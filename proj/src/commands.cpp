#include "esoclcp/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include "esoclcp/fixtures.hpp"
#include "esoclcp/generator.hpp"

namespace esoclcp::cli {

namespace {

std::string format_vector(const Vector<double> &v) {
  std::ostringstream os;
  os << std::setprecision(10) << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i)
    os << (i ? ", " : "") << v(i);
  os << ")";
  return os.str();
}

void emit(const std::string &text, const std::optional<std::string> &path, std::ostream &out) {
  if (path)
    io::write_text_file(*path, text);
  else
    out << text;
}

void print_summary(const SolveReport<double> &report, std::ostream &out) {
  out << "status:        " << to_string(report.status) << (report.verified ? " (verified)" : " (not verified)")
      << "\n";
  out << "case:          " << to_string(report.case_label) << "\n";
  out << "iterations:    " << report.iterations << "\n";
  out << "residual:      " << std::setprecision(6) << report.residual_norm << "\n";
  out << "certified:     " << (report.certified ? "yes" : "no") << "\n";
  out << "point xhat:    " << format_vector(report.point.xhat) << "\n";
  out << "point u:       " << format_vector(report.point.u) << "\n";
  out << "point t:       " << std::setprecision(10) << report.point.t << "\n";
  if (report.recovered) {
    out << "solution x:    " << format_vector(report.recovered->x) << "\n";
    out << "solution u:    " << format_vector(report.recovered->u) << "\n";
  }
  out << "note:          " << report.note << "\n";
}

int solve_batch(const SolveArgs &args, std::ostream &out, std::ostream &err) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(*args.batch_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  const auto opts = options_from(args);

  // Each problem gets its own solver state; results are printed in file order.
  std::vector<std::future<std::string>> jobs;
  std::vector<char> solved(files.size(), 0);
  for (std::size_t i = 0; i < files.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i]() -> std::string {
      try {
        const auto problem = load_problem(files[i].string()).to_problem();
        const auto report = solve_esoclcp(problem, opts);
        solved[i] = report.status == SolveStatus::Converged && report.verified;
        std::ostringstream line;
        line << files[i].filename().string() << " " << to_string(report.status) << " "
             << to_string(report.case_label) << " " << std::setprecision(3) << report.residual_norm;
        return line.str();
      } catch (const std::exception &e) {
        return files[i].filename().string() + " ERROR " + e.what();
      }
    }));
  }
  bool all = true;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    out << jobs[i].get() << "\n";
    all = all && solved[i] != 0;
  }
  (void)err;
  return all ? kOk : kNotSolved;
}

} // namespace

double default_residual_tol() {
  if (const char *env = std::getenv(kTolEnv)) {
    char *end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
      throw Error(ErrorKind::InvalidArgument, std::string(kTolEnv) + " must be a positive number");
    return v;
  }
  return 1e-7;
}

io::ProblemFile load_problem(const std::string &source) {
  if (source == kBuiltinPaper)
    return paper_example();
  if (source == kBuiltinPaperReconstructed)
    return paper_example_reconstructed();
  return io::problem_from_json(io::read_json_file(source));
}

SolverOptions<double> options_from(const SolveArgs &args) {
  SolverOptions<double> opts;
  opts.method = args.method;
  opts.residual_tol = args.tol ? *args.tol : default_residual_tol();
  opts.mu = args.mu;
  opts.max_iter = args.max_iter;
  opts.rng_seed = args.seed;
  opts.num_random_starts = args.starts;
  opts.validate();
  return opts;
}

int cmd_solve(const SolveArgs &args, std::ostream &out, std::ostream &err) {
  try {
    if (args.batch_dir)
      return solve_batch(args, out, err);
    const auto opts = options_from(args);
    const auto problem = load_problem(args.problem).to_problem();
    const auto report = solve_esoclcp(problem, opts);
    const std::string json = io::dump(io::to_json(io::make_report(report, opts)));
    if (args.json) {
      emit(json, args.out, out);
    } else {
      print_summary(report, out);
      if (args.out)
        io::write_text_file(*args.out, json);
    }
    return report.status == SolveStatus::Converged && report.verified ? kOk : kNotSolved;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_verify(const VerifyArgs &args, std::ostream &out, std::ostream &err) {
  try {
    const auto problem = load_problem(args.problem).to_problem(false);
    const auto candidate = io::solution_from_json(io::read_json_file(args.candidate));
    if (candidate.k != problem.dims().k() || candidate.l != problem.dims().l())
      throw Error(ErrorKind::DimensionMismatch,
                  "candidate has k=" + std::to_string(candidate.k) + ", l=" + std::to_string(candidate.l) +
                      " but the problem has k=" + std::to_string(problem.dims().k()) +
                      ", l=" + std::to_string(problem.dims().l()));
    const PointZ<double> z = candidate.point();
    const PointZ<double> w = problem.image(z);
    const bool ok = comp_pair_check(z, w, args.tol);
    const auto cls = classify_pair(z, w, args.tol);

    const double nu = z.u.norm();
    const double nv = w.u.norm();
    const double inner = z.x.dot(w.x) + z.u.dot(w.u);
    if (args.json) {
      io::Json j;
      j["complementary"] = ok;
      j["case"] = to_string(cls.label);
      j["tol"] = args.tol;
      j["min_x_minus_norm_u"] = z.x.minCoeff() - nu;
      j["sum_y_minus_norm_v"] = w.x.sum() - nv;
      j["min_y"] = w.x.minCoeff();
      j["inner_product"] = inner;
      if (cls.certificate) {
        j["lambda"] = cls.certificate->lambda;
        j["certificate_violation"] = cls.certificate->max_violation;
      }
      out << io::dump(j);
    } else {
      out << std::setprecision(10);
      out << "complementary: " << (ok ? "yes" : "no") << " (tol " << args.tol << ")\n";
      out << "case:          " << to_string(cls.label) << "\n";
      if (cls.certificate)
        out << "lambda:        " << cls.certificate->lambda << " (violation " << cls.certificate->max_violation
            << ")\n";
      out << "min x - ||u||: " << z.x.minCoeff() - nu << "\n";
      out << "e'y - ||v||:   " << w.x.sum() - nv << "\n";
      out << "min y:         " << w.x.minCoeff() << "\n";
      out << "<z, Tz + r>:   " << inner << "\n";
    }
    return ok ? kOk : kNotSolved;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_gen(const GenArgs &args, std::ostream &out, std::ostream &err) {
  try {
    const auto inst = generate_instance(args.k, args.l, parse_gen_case(args.which), args.seed);
    emit(io::dump(io::to_json(inst.problem)), args.out, out);
    if (inst.solution) {
      std::optional<std::string> sidecar = args.sidecar;
      if (!sidecar && args.out)
        sidecar = *args.out + ".solution.json";
      if (sidecar)
        io::write_text_file(*sidecar, io::dump(io::to_json(*inst.solution)));
    }
    return kOk;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_example_paper(const ExampleArgs &args, std::ostream &out, std::ostream &err) {
  try {
    const auto problem = args.reconstructed ? paper_example_reconstructed() : paper_example();
    emit(io::dump(io::to_json(problem)), args.out, out);
    return kOk;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

} // namespace esoclcp::cli
