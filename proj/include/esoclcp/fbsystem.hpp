#pragma once

#include <cmath>
#include <optional>
#include <tuple>
#include <utility>
#include <string>
#include <vector>

#include "esoclcp/feasibility.hpp"
#include "esoclcp/reformulation.hpp"

namespace esoclcp {

/// Default threshold for sorting indices into the complementarity set.
inline constexpr double kDefaultIndexEps = 1e-6;

/// Largest matrix accepted by s0_check.
inline constexpr Eigen::Index kMaxS0Dim = 20;

/// Fischer-Burmeister NCP function sqrt(a^2 + b^2) - (a + b). Zero exactly
/// when a >= 0, b >= 0 and ab = 0.
template <typename Scalar>
Scalar psi_fb(Scalar a, Scalar b) {
  return std::hypot(a, b) - (a + b);
}

/// Partial derivatives (d psi / da, d psi / db) of psi_fb. At the kink
/// (0, 0) the fixed element (1/sqrt(2) - 1, 1/sqrt(2) - 1) is returned.
template <typename Scalar>
std::pair<Scalar, Scalar> psi_fb_partials(Scalar a, Scalar b) {
  const Scalar r = std::hypot(a, b);
  if (r == Scalar(0)) {
    const Scalar d = Scalar(1) / std::sqrt(Scalar(2)) - Scalar(1);
    return {d, d};
  }
  return {a / r - Scalar(1), b / r - Scalar(1)};
}

/// Stacked equation system: psi_fb(xhat_i, F1~_i) over F2~.
template <typename Scalar>
Vector<Scalar> fb_residual(const LcpProblem<Scalar> &prob, const MixCpPoint<Scalar> &w) {
  const auto k = prob.dims().k();
  const Vector<Scalar> f1 = f1_tilde(prob, w);
  const Vector<Scalar> f2 = f2_tilde(prob, w);
  Vector<Scalar> out(w.size());
  for (Eigen::Index i = 0; i < k; ++i)
    out(i) = psi_fb(w.xhat(i), f1(i));
  out.tail(f2.size()) = f2;
  return out;
}

/// Jacobian of fb_residual: [[D_a + D_b A~, D_b B~], [C~, D~]].
template <typename Scalar>
Matrix<Scalar> fb_jacobian(const LcpProblem<Scalar> &prob, const MixCpPoint<Scalar> &w) {
  const auto k = prob.dims().k();
  const auto blocks = jacobian_blocks(prob, w);
  const Vector<Scalar> f1 = f1_tilde(prob, w);
  Vector<Scalar> da(k), db(k);
  for (Eigen::Index i = 0; i < k; ++i)
    std::tie(da(i), db(i)) = psi_fb_partials(w.xhat(i), f1(i));

  const auto n = w.size();
  Matrix<Scalar> jac(n, n);
  jac.topLeftCorner(k, k) = db.asDiagonal() * blocks.a_tilde;
  jac.topLeftCorner(k, k).diagonal() += da;
  jac.topRightCorner(k, n - k) = db.asDiagonal() * blocks.b_tilde;
  jac.bottomLeftCorner(n - k, k) = blocks.c_tilde;
  jac.bottomRightCorner(n - k, n - k) = blocks.d_tilde;
  return jac;
}

template <typename Scalar>
struct FbSystemEval {
  Vector<Scalar> residual;
  Scalar merit;
  Matrix<Scalar> jacobian;
  Vector<Scalar> grad_merit;
};

template <typename Scalar>
FbSystemEval<Scalar> evaluate_fb_system(const LcpProblem<Scalar> &prob, const MixCpPoint<Scalar> &w) {
  FbSystemEval<Scalar> ev;
  ev.residual = fb_residual(prob, w);
  ev.merit = Scalar(0.5) * ev.residual.squaredNorm();
  ev.jacobian = fb_jacobian(prob, w);
  ev.grad_merit = ev.jacobian.transpose() * ev.residual;
  return ev;
}

template <typename Scalar>
Scalar merit(const LcpProblem<Scalar> &prob, const MixCpPoint<Scalar> &w) {
  return Scalar(0.5) * fb_residual(prob, w).squaredNorm();
}

template <typename Scalar>
Vector<Scalar> grad_merit(const LcpProblem<Scalar> &prob, const MixCpPoint<Scalar> &w) {
  return fb_jacobian(prob, w).transpose() * fb_residual(prob, w);
}

/// Complementarity / residual / positive / negative index sets (0-based).
struct IndexSets {
  std::vector<Eigen::Index> comp;
  std::vector<Eigen::Index> res;
  std::vector<Eigen::Index> pos;
  std::vector<Eigen::Index> neg;
};

template <typename Scalar>
IndexSets index_sets(const Vector<Scalar> &xhat, const Vector<Scalar> &f1,
                     Scalar eps = Scalar(kDefaultIndexEps)) {
  if (xhat.size() != f1.size())
    throw Error(ErrorKind::DimensionMismatch, "index_sets: length mismatch");
  if (!(eps > Scalar(0)))
    throw Error(ErrorKind::InvalidArgument, "index_sets: eps must be positive");
  IndexSets sets;
  for (Eigen::Index i = 0; i < xhat.size(); ++i) {
    const Scalar a = xhat(i);
    const Scalar b = f1(i);
    if (a >= -eps && b >= -eps && std::abs(a * b) <= eps) {
      sets.comp.push_back(i);
      continue;
    }
    sets.res.push_back(i);
    if (a > eps && b > eps)
      sets.pos.push_back(i);
    else
      sets.neg.push_back(i);
  }
  return sets;
}

/// Whether some x >= 0, x != 0 has m x >= 0. Decided exactly as the
/// feasibility of {x >= 0, m x >= 0, e^T x = 1}.
template <typename Scalar>
bool s0_check(const Matrix<Scalar> &m, Scalar feas_tol = Scalar(1e-9)) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, "s0_check: matrix must be square");
  if (m.rows() > kMaxS0Dim)
    throw Error(ErrorKind::TooLarge, "s0_check supports n <= 20");
  const Eigen::Index n = m.rows();
  const Scalar scale = inf_norm(m);
  const Matrix<Scalar> ms = scale > Scalar(0) ? Matrix<Scalar>(m / scale) : m;

  // Variables (x, s) >= 0 with ms x - s = 0 and e^T x = 1.
  Matrix<Scalar> eq = Matrix<Scalar>::Zero(n + 1, 2 * n);
  eq.topLeftCorner(n, n) = ms;
  eq.topRightCorner(n, n) = -Matrix<Scalar>::Identity(n, n);
  eq.bottomLeftCorner(1, n).setOnes();
  Vector<Scalar> rhs = Vector<Scalar>::Zero(n + 1);
  rhs(n) = Scalar(1);
  return phase_one_feasible(eq, rhs, feas_tol);
}

/// ||grad merit||_inf <= tol (1 + ||residual||).
template <typename Scalar>
bool stationarity_check(const LcpProblem<Scalar> &prob, const MixCpPoint<Scalar> &w, Scalar tol) {
  const auto ev = evaluate_fb_system(prob, w);
  return inf_norm(ev.grad_merit) <= tol * (Scalar(1) + ev.residual.norm());
}

enum class RegularityKind { Regular, Indeterminate, IrregularWitness };

inline const char *to_string(RegularityKind k) {
  switch (k) {
  case RegularityKind::Regular: return "Regular";
  case RegularityKind::Indeterminate: return "Indeterminate";
  case RegularityKind::IrregularWitness: return "IrregularWitness";
  }
  return "?";
}

template <typename Scalar>
struct RegularityVerdict {
  RegularityKind kind;
  std::string reason;
  IndexSets sets;
  /// Null vector of A when A is singular.
  std::optional<Vector<Scalar>> witness;
  /// D~ - C~ A~^{-1} B~, the (l+1) x (l+1) complement of the x block.
  std::optional<Matrix<Scalar>> x_block_schur;
  /// A~ - B~ D~^{-1} C~ restricted to the residual indices.
  std::optional<Matrix<Scalar>> free_block_schur;
  /// s0_check of free_block_schur; evidence only.
  std::optional<bool> s0_advisory;
};

/// FB-regularity certificate.
///
/// Regular is only issued when A is nonsingular and the residual index set
/// is empty, where the sign-pattern condition is vacuous. Points with
/// residual indices come back Indeterminate together with the free-block
/// Schur complement for inspection.
template <typename Scalar>
RegularityVerdict<Scalar> fb_regularity_check(const LcpProblem<Scalar> &prob, const MixCpPoint<Scalar> &w,
                                              Scalar eps = Scalar(kDefaultIndexEps),
                                              Scalar tol = Scalar(1e-9)) {
  if (!(eps > Scalar(0)) || !(tol > Scalar(0)))
    throw Error(ErrorKind::InvalidArgument, "fb_regularity_check: eps and tol must be positive");
  RegularityVerdict<Scalar> verdict;
  const Vector<Scalar> f1 = f1_tilde(prob, w);
  verdict.sets = index_sets(w.xhat, f1, eps);

  if (!prob.a_factors()) {
    verdict.kind = RegularityKind::IrregularWitness;
    verdict.reason = "J_x F1~ = A is singular";
    Eigen::FullPivLU<Matrix<Scalar>> full(prob.A());
    full.setThreshold(kSingularPivotTol);
    const Matrix<Scalar> kernel = full.kernel();
    if (kernel.cols() > 0 && kernel.col(0).norm() > Scalar(0))
      verdict.witness = kernel.col(0).normalized();
    return verdict;
  }

  const auto blocks = jacobian_blocks(prob, w);
  const auto &a_lu = *prob.a_factors();
  verdict.x_block_schur = blocks.d_tilde - blocks.c_tilde * a_lu.solve(blocks.b_tilde);

  if (verdict.sets.res.empty()) {
    verdict.kind = RegularityKind::Regular;
    verdict.reason = "residual index set is empty";
    return verdict;
  }

  verdict.kind = RegularityKind::Indeterminate;
  verdict.reason = "residual index set is non-empty; sign-pattern condition not decided";
  const auto d_lu = lu_factor(blocks.d_tilde);
  const Matrix<Scalar> full_free = blocks.a_tilde - blocks.b_tilde * d_lu.solve(blocks.c_tilde);
  const auto nres = static_cast<Eigen::Index>(verdict.sets.res.size());
  Matrix<Scalar> restricted(nres, nres);
  for (Eigen::Index i = 0; i < nres; ++i)
    for (Eigen::Index j = 0; j < nres; ++j)
      restricted(i, j) = full_free(verdict.sets.res[i], verdict.sets.res[j]);
  verdict.free_block_schur = restricted;
  if (nres <= kMaxS0Dim)
    verdict.s0_advisory = s0_check(restricted, tol);
  return verdict;
}

/// Stationary and FB-regular, hence a solution of the smooth mixed problem.
template <typename Scalar>
bool certify_solution(const LcpProblem<Scalar> &prob, const MixCpPoint<Scalar> &w,
                      Scalar eps = Scalar(kDefaultIndexEps), Scalar tol = Scalar(1e-6)) {
  try {
    return stationarity_check(prob, w, tol) &&
           fb_regularity_check(prob, w, eps, tol).kind == RegularityKind::Regular;
  } catch (const Error &) {
    return false;
  }
}

} // namespace esoclcp
