#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "esoclcp/fbsystem.hpp"

namespace esoclcp {

enum class Method { Newton, LevenbergMarquardt };

enum class SolveStatus { Converged, MaxIter, SingularJacobian, Diverged };

enum class CaseLabel { CaseI, CaseII, CaseVI };

inline const char *to_string(Method m) {
  return m == Method::Newton ? "newton" : "lm";
}

inline const char *to_string(SolveStatus s) {
  switch (s) {
  case SolveStatus::Converged: return "Converged";
  case SolveStatus::MaxIter: return "MaxIter";
  case SolveStatus::SingularJacobian: return "SingularJacobian";
  case SolveStatus::Diverged: return "Diverged";
  }
  return "?";
}

inline const char *to_string(CaseLabel c) {
  switch (c) {
  case CaseLabel::CaseI: return "CASE_I";
  case CaseLabel::CaseII: return "CASE_II";
  case CaseLabel::CaseVI: return "CASE_VI";
  }
  return "?";
}

/// Residual growth over the best residual seen that counts as divergence.
inline constexpr double kDivergenceFactor = 1e6;

/// Tolerance at which the pipeline accepts a recovered solution.
inline constexpr double kAcceptTol = 1e-6;

/// Smallest t accepted as a strictly positive norm surrogate.
inline constexpr double kMinPositiveT = 1e-6;

template <typename Scalar>
struct SolverOptions {
  Method method = Method::LevenbergMarquardt;
  Scalar residual_tol = Scalar(1e-7);
  Scalar mu = Scalar(0.005);
  int max_iter = 200;
  /// Starting point; the default start is used when empty.
  std::optional<MixCpPoint<Scalar>> start;
  int num_random_starts = 8;
  std::uint64_t rng_seed = 0;
  /// Keep every iterate in the report (used by convergence-rate studies).
  bool record_iterates = false;

  void validate() const {
    if (!(residual_tol > Scalar(0)))
      throw Error(ErrorKind::InvalidArgument, "residual_tol must be positive");
    if (!(mu >= Scalar(0)))
      throw Error(ErrorKind::InvalidArgument, "mu must be non-negative");
    if (max_iter < 1)
      throw Error(ErrorKind::InvalidArgument, "max_iter must be at least 1");
    if (num_random_starts < 0)
      throw Error(ErrorKind::InvalidArgument, "num_random_starts must be non-negative");
  }
};

template <typename Scalar>
struct SolveReport {
  SolveStatus status = SolveStatus::MaxIter;
  MixCpPoint<Scalar> point;
  Scalar residual_norm = std::numeric_limits<Scalar>::infinity();
  int iterations = 0;
  std::vector<Scalar> residual_history;
  CaseLabel case_label = CaseLabel::CaseVI;
  /// Passed every acceptance check of its branch (only set by solve_esoclcp).
  bool verified = false;
  bool certified = false;
  std::optional<PointZ<Scalar>> recovered;
  /// Human-readable account of why a branch was accepted or rejected.
  std::string note;
  std::vector<Vector<Scalar>> iterates;
};

/// A square nonlinear system F(z) = 0 with its Jacobian.
template <typename Scalar>
struct EquationSystem {
  std::function<Vector<Scalar>(const Vector<Scalar> &)> residual;
  std::function<Matrix<Scalar>(const Vector<Scalar> &)> jacobian;
};

template <typename Scalar>
struct IterationTrace {
  SolveStatus status = SolveStatus::MaxIter;
  Vector<Scalar> z;
  std::vector<Scalar> history;
  std::vector<Vector<Scalar>> iterates;

  Scalar final_residual() const { return history.back(); }
  int iterations() const { return static_cast<int>(history.size()) - 1; }
};

/// Solution d of J d = -F, or nothing when J is singular.
template <typename Scalar>
std::optional<Vector<Scalar>> newton_step(const Matrix<Scalar> &jac, const Vector<Scalar> &res) {
  try {
    return Vector<Scalar>(-lu_factor(jac).solve(res));
  } catch (const Error &e) {
    if (e.kind() == ErrorKind::SingularMatrix)
      return std::nullopt;
    throw;
  }
}

/// Solution d of (J^T J + mu I) d = -J^T F.
template <typename Scalar>
std::optional<Vector<Scalar>> lm_step(const Matrix<Scalar> &jac, const Vector<Scalar> &res, Scalar mu) {
  Matrix<Scalar> normal = jac.transpose() * jac;
  normal.diagonal().array() += mu;
  Eigen::LLT<Matrix<Scalar>> llt(normal);
  if (llt.info() != Eigen::Success)
    return std::nullopt;
  Vector<Scalar> d = -llt.solve(Vector<Scalar>(jac.transpose() * res));
  if (!d.allFinite())
    return std::nullopt;
  return d;
}

/// Undamped Newton or fixed-mu Levenberg-Marquardt iteration, stopping once
/// ||F||_inf <= tol.
template <typename Scalar>
IterationTrace<Scalar> iterate_system(const EquationSystem<Scalar> &sys, Vector<Scalar> z0, Method method,
                                      Scalar tol, Scalar mu, int max_iter, bool record_iterates = false) {
  IterationTrace<Scalar> trace;
  trace.z = std::move(z0);
  Vector<Scalar> res = sys.residual(trace.z);
  Scalar norm = inf_norm(res);
  Scalar best = norm;
  trace.history.push_back(norm);
  if (record_iterates)
    trace.iterates.push_back(trace.z);
  if (!std::isfinite(norm)) {
    trace.status = SolveStatus::Diverged;
    return trace;
  }

  for (int iter = 0;; ++iter) {
    if (norm <= tol) {
      trace.status = SolveStatus::Converged;
      return trace;
    }
    if (iter == max_iter) {
      trace.status = SolveStatus::MaxIter;
      return trace;
    }
    const Matrix<Scalar> jac = sys.jacobian(trace.z);
    const auto step = method == Method::Newton ? newton_step(jac, res) : lm_step(jac, res, mu);
    if (!step) {
      trace.status = method == Method::Newton ? SolveStatus::SingularJacobian : SolveStatus::Diverged;
      return trace;
    }
    trace.z += *step;
    res = sys.residual(trace.z);
    norm = inf_norm(res);
    trace.history.push_back(norm);
    if (record_iterates)
      trace.iterates.push_back(trace.z);
    if (!std::isfinite(norm) || norm > Scalar(kDivergenceFactor) * best) {
      trace.status = SolveStatus::Diverged;
      return trace;
    }
    best = std::min(best, norm);
  }
}

/// Take up to `max_steps` Newton steps from a converged iterate, keeping
/// each only if it lowers the residual.
template <typename Scalar>
void refine_newton(const EquationSystem<Scalar> &sys, IterationTrace<Scalar> &trace, int max_steps = 3) {
  for (int i = 0; i < max_steps; ++i) {
    const Vector<Scalar> res = sys.residual(trace.z);
    const Scalar before = inf_norm(res);
    if (before == Scalar(0))
      return;
    const auto step = newton_step(sys.jacobian(trace.z), res);
    if (!step)
      return;
    const Vector<Scalar> candidate = trace.z + *step;
    const Scalar after = inf_norm(sys.residual(candidate));
    if (!(after < before))
      return;
    trace.z = candidate;
    trace.history.push_back(after);
    if (!trace.iterates.empty())
      trace.iterates.push_back(candidate);
  }
}

template <typename Scalar>
EquationSystem<Scalar> augmented_system(const LcpProblem<Scalar> &prob) {
  const EsocDims dims = prob.dims();
  return EquationSystem<Scalar>{
      [&prob, dims](const Vector<Scalar> &z) { return fb_residual(prob, MixCpPoint<Scalar>::unpack(z, dims)); },
      [&prob, dims](const Vector<Scalar> &z) { return fb_jacobian(prob, MixCpPoint<Scalar>::unpack(z, dims)); }};
}

/// psi_fb(x_i, (A x + p)_i) = 0 on R^k.
template <typename Scalar>
EquationSystem<Scalar> orthant_system(const Matrix<Scalar> &A, const Vector<Scalar> &p) {
  return EquationSystem<Scalar>{
      [A, p](const Vector<Scalar> &x) {
        const Vector<Scalar> y = A * x + p;
        Vector<Scalar> out(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
          out(i) = psi_fb(x(i), y(i));
        return out;
      },
      [A, p](const Vector<Scalar> &x) {
        const Vector<Scalar> y = A * x + p;
        Vector<Scalar> da(x.size()), db(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
          std::tie(da(i), db(i)) = psi_fb_partials(x(i), y(i));
        Matrix<Scalar> jac = db.asDiagonal() * A;
        jac.diagonal() += da;
        return jac;
      }};
}

/// v = 0 branch on R^m: psi_fb(x_i, (Ax + Bu + p)_i) stacked over Cx + Du + q.
template <typename Scalar>
EquationSystem<Scalar> zero_v_system(const LcpProblem<Scalar> &prob) {
  const EsocDims dims = prob.dims();
  return EquationSystem<Scalar>{
      [&prob, dims](const Vector<Scalar> &z) {
        const auto img = prob.image(PointZ<Scalar>::split(z, dims));
        Vector<Scalar> out(dims.m());
        for (Eigen::Index i = 0; i < dims.k(); ++i)
          out(i) = psi_fb(z(i), img.x(i));
        out.tail(dims.l()) = img.u;
        return out;
      },
      [&prob, dims](const Vector<Scalar> &z) {
        const auto k = dims.k();
        const auto l = dims.l();
        const auto img = prob.image(PointZ<Scalar>::split(z, dims));
        Vector<Scalar> da(k), db(k);
        for (Eigen::Index i = 0; i < k; ++i)
          std::tie(da(i), db(i)) = psi_fb_partials(z(i), img.x(i));
        Matrix<Scalar> jac(dims.m(), dims.m());
        jac.topLeftCorner(k, k) = db.asDiagonal() * prob.A();
        jac.topLeftCorner(k, k).diagonal() += da;
        jac.topRightCorner(k, l) = db.asDiagonal() * prob.B();
        jac.bottomRows(l) << prob.C(), prob.D();
        return jac;
      }};
}

/// xhat = e, u = e / sqrt(l), t = 1.
template <typename Scalar>
MixCpPoint<Scalar> default_start(const EsocDims &dims) {
  return MixCpPoint<Scalar>{Vector<Scalar>::Ones(dims.k()),
                            Vector<Scalar>::Constant(dims.l(), Scalar(1) / std::sqrt(Scalar(dims.l()))),
                            Scalar(1)};
}

namespace detail {

/// Generator for the i-th random start: seed ^ (golden-ratio constant * (i + 1)).
inline std::mt19937_64 start_generator(std::uint64_t seed, int index) {
  return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1)));
}

/// Uniform draw on [lo, hi) from the top 53 bits, identical on every platform.
template <typename Scalar>
Scalar uniform(std::mt19937_64 &gen, Scalar lo, Scalar hi) {
  const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * Scalar(unit);
}

} // namespace detail

/// Start drawn from [0,1]^k x [-1,1]^l x [0.5,1.5].
template <typename Scalar>
MixCpPoint<Scalar> random_start(const EsocDims &dims, std::uint64_t seed, int index) {
  auto gen = detail::start_generator(seed, index);
  MixCpPoint<Scalar> w{Vector<Scalar>(dims.k()), Vector<Scalar>(dims.l()), Scalar(0)};
  for (Eigen::Index i = 0; i < dims.k(); ++i)
    w.xhat(i) = detail::uniform<Scalar>(gen, 0, 1);
  for (Eigen::Index i = 0; i < dims.l(); ++i)
    w.u(i) = detail::uniform<Scalar>(gen, -1, 1);
  w.t = detail::uniform<Scalar>(gen, Scalar(0.5), Scalar(1.5));
  return w;
}

namespace detail {

template <typename Scalar>
SolveReport<Scalar> solve_augmented(const LcpProblem<Scalar> &prob, const SolverOptions<Scalar> &opts,
                                    const MixCpPoint<Scalar> &start) {
  detail::require_dims(prob, start);
  const auto sys = augmented_system(prob);
  const auto trace = iterate_system(sys, start.pack(), opts.method, opts.residual_tol, opts.mu, opts.max_iter,
                                    opts.record_iterates);
  SolveReport<Scalar> report;
  report.status = trace.status;
  report.point = MixCpPoint<Scalar>::unpack(trace.z, prob.dims());
  report.residual_norm = trace.final_residual();
  report.iterations = trace.iterations();
  report.residual_history = trace.history;
  report.case_label = CaseLabel::CaseVI;
  report.iterates = trace.iterates;
  return report;
}

} // namespace detail

/// Newton iteration z <- z + d with A(z) d = -F(z) on the augmented FB system.
template <typename Scalar>
SolveReport<Scalar> newton_solve(const LcpProblem<Scalar> &prob, const SolverOptions<Scalar> &opts) {
  opts.validate();
  if (opts.method != Method::Newton)
    throw Error(ErrorKind::InvalidArgument, "newton_solve called with method != newton");
  return detail::solve_augmented(prob, opts, opts.start.value_or(default_start<Scalar>(prob.dims())));
}

/// Levenberg-Marquardt iteration z <- z - (A^T A + mu I)^{-1} A^T F.
template <typename Scalar>
SolveReport<Scalar> lm_solve(const LcpProblem<Scalar> &prob, const SolverOptions<Scalar> &opts) {
  opts.validate();
  if (opts.method != Method::LevenbergMarquardt)
    throw Error(ErrorKind::InvalidArgument, "lm_solve called with method != lm");
  if (!(opts.mu > Scalar(0)))
    throw Error(ErrorKind::InvalidArgument, "lm_solve requires mu > 0");
  return detail::solve_augmented(prob, opts, opts.start.value_or(default_start<Scalar>(prob.dims())));
}

template <typename Scalar>
struct OrthantSolveResult {
  Vector<Scalar> x;
  SolveStatus status;
  Scalar residual_norm;
  int iterations;
  std::vector<Scalar> residual_history;
};

/// Solve LCP(A, p, R^k_+) through its FB equation, starting from `start`
/// (default: e).
template <typename Scalar>
OrthantSolveResult<Scalar> orthant_lcp_solve(const Matrix<Scalar> &A, const Vector<Scalar> &p,
                                             const SolverOptions<Scalar> &opts,
                                             std::optional<Vector<Scalar>> start = std::nullopt) {
  opts.validate();
  if (A.rows() != A.cols() || A.rows() != p.size())
    throw Error(ErrorKind::DimensionMismatch, "orthant_lcp_solve: A must be square and match p");
  const Vector<Scalar> x0 = start.value_or(Vector<Scalar>::Ones(p.size()));
  if (x0.size() != p.size())
    throw Error(ErrorKind::DimensionMismatch, "orthant_lcp_solve: start has wrong length");
  const auto trace =
      iterate_system(orthant_system(A, p), x0, opts.method, opts.residual_tol, opts.mu, opts.max_iter);
  return {trace.z, trace.status, trace.final_residual(), trace.iterations(), trace.history};
}

namespace detail {

template <typename Scalar>
bool better_failure(const SolveReport<Scalar> &candidate, const std::optional<SolveReport<Scalar>> &current) {
  if (!current)
    return true;
  const Scalar a = candidate.residual_norm;
  const Scalar b = current->residual_norm;
  if (std::isfinite(a) != std::isfinite(b))
    return std::isfinite(a);
  return a < b;
}

/// Finalize an accepted branch: evaluate the augmented residual at `w` and
/// certify. Returns false when the augmented residual misses the tolerance.
template <typename Scalar>
bool finish_accepted(const LcpProblem<Scalar> &prob, const SolverOptions<Scalar> &opts, const PointZ<Scalar> &z,
                     const MixCpPoint<Scalar> &w, const IterationTrace<Scalar> &trace, CaseLabel label,
                     SolveReport<Scalar> &report) {
  report.point = w;
  report.residual_norm = inf_norm(fb_residual(prob, w));
  if (!(report.residual_norm <= opts.residual_tol))
    return false;
  report.status = SolveStatus::Converged;
  report.iterations = trace.iterations();
  report.residual_history = trace.history;
  report.case_label = label;
  report.verified = true;
  report.recovered = z;
  report.certified = certify_solution(prob, w, Scalar(kDefaultIndexEps), Scalar(kAcceptTol));
  return true;
}

} // namespace detail

/// Run one branch of the pipeline: CASE_VI is the smooth augmented system
/// (u != 0, v != 0), CASE_I the u = 0 orthant reduction, CASE_II the v = 0
/// mixed system. The branch is tried from the default start and
/// `num_random_starts` seeded starts; a candidate is accepted only after an
/// independent complementarity check of z against T z + r. Rejected
/// attempts update `best_failure` when it is given and beats it.
template <typename Scalar>
std::optional<SolveReport<Scalar>> solve_branch(const LcpProblem<Scalar> &prob, const SolverOptions<Scalar> &opts,
                                                CaseLabel branch,
                                                std::optional<SolveReport<Scalar>> *best_failure = nullptr) {
  opts.validate();
  if (opts.method == Method::LevenbergMarquardt && !(opts.mu > Scalar(0)))
    throw Error(ErrorKind::InvalidArgument, "Levenberg-Marquardt requires mu > 0");
  const EsocDims dims = prob.dims();
  const Scalar accept = Scalar(kAcceptTol);
  const int total_starts = 1 + opts.num_random_starts;

  auto start_for = [&](int i) {
    if (i == 0)
      return opts.start.value_or(default_start<Scalar>(dims));
    return random_start<Scalar>(dims, opts.rng_seed, i - 1);
  };

  auto record_failure = [&](SolveReport<Scalar> report, std::string note) {
    report.verified = false;
    report.note = std::move(note);
    if (best_failure && detail::better_failure(report, *best_failure))
      *best_failure = std::move(report);
  };

  switch (branch) {
  case CaseLabel::CaseVI: {
    const auto aug = augmented_system(prob);
    for (int i = 0; i < total_starts; ++i) {
      auto trace = iterate_system(aug, start_for(i).pack(), opts.method, opts.residual_tol, opts.mu, opts.max_iter,
                                  opts.record_iterates);
      SolveReport<Scalar> report;
      report.status = trace.status;
      report.point = MixCpPoint<Scalar>::unpack(trace.z, dims);
      report.residual_norm = trace.final_residual();
      report.iterations = trace.iterations();
      report.residual_history = trace.history;
      report.case_label = CaseLabel::CaseVI;
      if (trace.status != SolveStatus::Converged) {
        record_failure(std::move(report), std::string("augmented system: ") + to_string(trace.status));
        continue;
      }
      refine_newton(aug, trace);
      const auto w = MixCpPoint<Scalar>::unpack(trace.z, dims);
      if (!(w.t > Scalar(kMinPositiveT))) {
        record_failure(std::move(report), "augmented system converged with t = " +
                                              std::to_string(static_cast<double>(w.t)) + " <= 0");
        continue;
      }
      PointZ<Scalar> z;
      try {
        z = recover_solution(w, accept);
      } catch (const Error &e) {
        record_failure(std::move(report), std::string("recovery failed: ") + e.what());
        continue;
      }
      const auto cls = classify_pair(z, prob.image(z), accept);
      if (cls.label != PairCase::General) {
        record_failure(std::move(report),
                       std::string("recovered pair classified ") + to_string(cls.label) + ", not GENERAL");
        continue;
      }
      report.iterates = trace.iterates;
      if (detail::finish_accepted(prob, opts, z, w, trace, CaseLabel::CaseVI, report)) {
        report.note = "accepted: u != 0, v != 0";
        return report;
      }
      record_failure(std::move(report), "augmented residual above tolerance after recovery");
    }
    return std::nullopt;
  }

  case CaseLabel::CaseI: {
    const auto orth = orthant_system(prob.A(), prob.p());
    // e, the origin, then the seeded starts.
    for (int i = -1; i < total_starts; ++i) {
      const Vector<Scalar> x0 =
          i == -1  ? Vector<Scalar>(Vector<Scalar>::Ones(dims.k()))
          : i == 0 ? Vector<Scalar>(Vector<Scalar>::Zero(dims.k()))
                   : Vector<Scalar>(random_start<Scalar>(dims, opts.rng_seed, i - 1).xhat);
      auto trace = iterate_system(orth, x0, opts.method, opts.residual_tol, opts.mu, opts.max_iter);
      SolveReport<Scalar> report;
      report.status = trace.status;
      report.point = MixCpPoint<Scalar>{trace.z, Vector<Scalar>::Zero(dims.l()), Scalar(0)};
      report.residual_norm = trace.final_residual();
      report.iterations = trace.iterations();
      report.residual_history = trace.history;
      report.case_label = CaseLabel::CaseI;
      if (trace.status != SolveStatus::Converged) {
        record_failure(std::move(report), std::string("orthant reduction: ") + to_string(trace.status));
        continue;
      }
      refine_newton(orth, trace);
      const PointZ<Scalar> z{trace.z, Vector<Scalar>::Zero(dims.l())};
      if (!case_i_check(prob, z.x, accept) || !comp_pair_check(z, prob.image(z), accept)) {
        record_failure(std::move(report), "orthant solution fails e^T(Ax+p) >= ||Cx+q||");
        continue;
      }
      if (detail::finish_accepted(prob, opts, z, MixCpPoint<Scalar>::from_solution(z), trace, CaseLabel::CaseI,
                                  report)) {
        report.note = "accepted: u = 0";
        return report;
      }
      record_failure(std::move(report), "augmented residual above tolerance for u = 0 solution");
    }
    return std::nullopt;
  }

  case CaseLabel::CaseII: {
    const auto zero_v = zero_v_system(prob);
    // With u != 0, x >= ||u|| e > 0 forces y = 0, so T z + r = 0.
    {
      IterationTrace<Scalar> trace;
      trace.z = lu_factor(prob.T()).solve(Vector<Scalar>(-prob.r()));
      trace.history.push_back(inf_norm(zero_v.residual(trace.z)));
      const auto z = PointZ<Scalar>::split(trace.z, dims);
      if (z.u.norm() > accept && case_ii_check(prob, z, accept) && comp_pair_check(z, prob.image(z), accept)) {
        SolveReport<Scalar> report;
        if (detail::finish_accepted(prob, opts, z, MixCpPoint<Scalar>::from_solution(z), trace,
                                    CaseLabel::CaseII, report)) {
          report.note = "accepted: v = 0, y = 0 (linear solve)";
          return report;
        }
      }
    }
    for (int i = 0; i < total_starts; ++i) {
      const auto s = i == 0 ? default_start<Scalar>(dims) : random_start<Scalar>(dims, opts.rng_seed, i - 1);
      const Vector<Scalar> z0 = PointZ<Scalar>{s.xhat, s.u}.stacked();
      auto trace = iterate_system(zero_v, z0, opts.method, opts.residual_tol, opts.mu, opts.max_iter);
      const auto z = PointZ<Scalar>::split(trace.z, dims);
      SolveReport<Scalar> report;
      report.status = trace.status;
      report.point = MixCpPoint<Scalar>::from_solution(z);
      report.residual_norm = trace.final_residual();
      report.iterations = trace.iterations();
      report.residual_history = trace.history;
      report.case_label = CaseLabel::CaseII;
      if (trace.status != SolveStatus::Converged) {
        record_failure(std::move(report), std::string("v = 0 system: ") + to_string(trace.status));
        continue;
      }
      refine_newton(zero_v, trace);
      const auto zr = PointZ<Scalar>::split(trace.z, dims);
      if (!case_ii_check(prob, zr, accept) || !comp_pair_check(zr, prob.image(zr), accept)) {
        record_failure(std::move(report), "v = 0 solution violates x >= ||u|| e");
        continue;
      }
      if (detail::finish_accepted(prob, opts, zr, MixCpPoint<Scalar>::from_solution(zr), trace, CaseLabel::CaseII,
                                  report)) {
        report.note = "accepted: v = 0";
        return report;
      }
      record_failure(std::move(report), "augmented residual above tolerance for v = 0 solution");
    }
    return std::nullopt;
  }
  }
  return std::nullopt;
}

/// Full pipeline: CASE_VI, then CASE_I, then CASE_II (see solve_branch).
/// Returns the first accepted report, or the failed attempt with the
/// smallest residual.
template <typename Scalar>
SolveReport<Scalar> solve_esoclcp(const LcpProblem<Scalar> &prob, const SolverOptions<Scalar> &opts) {
  std::optional<SolveReport<Scalar>> best_failure;
  for (auto branch : {CaseLabel::CaseVI, CaseLabel::CaseI, CaseLabel::CaseII}) {
    if (auto report = solve_branch(prob, opts, branch, &best_failure))
      return std::move(*report);
  }
  SolveReport<Scalar> failed = std::move(*best_failure);
  failed.note = "no branch produced a verified solution; best attempt: " + failed.note;
  return failed;
}

} // namespace esoclcp
