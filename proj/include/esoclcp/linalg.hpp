#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "esoclcp/errors.hpp"

namespace esoclcp {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Relative pivot threshold below which a matrix is declared singular.
inline constexpr double kSingularPivotTol = 1e-12;

/// Default central-difference step for fd_jacobian.
inline constexpr double kDefaultFdStep = 1e-6;

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived> &m, const std::string &what) {
  if (!m.allFinite())
    throw Error(ErrorKind::NonFinite, what + " contains NaN or infinite entries");
}

template <typename Derived>
typename Derived::Scalar inf_norm(const Eigen::MatrixBase<Derived> &m) {
  if (m.size() == 0)
    return typename Derived::Scalar(0);
  return m.cwiseAbs().maxCoeff();
}

/// Row-pivoted LU factors of a square matrix.
///
/// Only obtainable through lu_factor, so every instance is known to be
/// nonsingular at the kSingularPivotTol level.
template <typename Scalar>
class LuFactors {
public:
  using MatrixType = Matrix<Scalar>;
  using VectorType = Vector<Scalar>;

  Eigen::Index dim() const { return lu_.matrixLU().rows(); }

  /// Unit lower-triangular factor.
  MatrixType lower() const {
    MatrixType l = lu_.matrixLU().template triangularView<Eigen::StrictlyLower>();
    l.diagonal().setOnes();
    return l;
  }

  MatrixType upper() const {
    return lu_.matrixLU().template triangularView<Eigen::Upper>();
  }

  /// P such that P * M == L * U.
  MatrixType permutation() const { return lu_.permutationP().toDenseMatrix().template cast<Scalar>(); }

  /// P^{-1} L U, i.e. the factored matrix.
  MatrixType reconstruct() const { return lu_.reconstructedMatrix(); }

  VectorType solve(const VectorType &b) const {
    if (b.size() != dim())
      throw Error(ErrorKind::DimensionMismatch,
                  "lu_solve: rhs has length " + std::to_string(b.size()) +
                      ", factors have dimension " + std::to_string(dim()));
    return lu_.solve(b);
  }

  MatrixType solve(const MatrixType &b) const {
    if (b.rows() != dim())
      throw Error(ErrorKind::DimensionMismatch, "lu_solve: rhs row count mismatch");
    return lu_.solve(b);
  }

  MatrixType inverse() const { return lu_.inverse(); }

private:
  template <typename S>
  friend LuFactors<S> lu_factor(const Matrix<S> &m);

  explicit LuFactors(const MatrixType &m) : lu_(m) {}

  Eigen::PartialPivLU<MatrixType> lu_;
};

/// Factor a square matrix with partial pivoting.
///
/// Throws SingularMatrix when some pivot magnitude is at most
/// kSingularPivotTol times the largest entry of `m`.
template <typename Scalar>
LuFactors<Scalar> lu_factor(const Matrix<Scalar> &m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch,
                "lu_factor: expected a non-empty square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  require_finite(m, "lu_factor input");
  LuFactors<Scalar> f(m);
  const Scalar threshold = Scalar(kSingularPivotTol) * inf_norm(m);
  const auto &packed = f.lu_.matrixLU();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    if (std::abs(packed(i, i)) <= threshold)
      throw Error(ErrorKind::SingularMatrix,
                  "pivot " + std::to_string(i) + " is below the singularity threshold");
  }
  return f;
}

template <typename Scalar>
Vector<Scalar> lu_solve(const LuFactors<Scalar> &f, const Vector<Scalar> &b) {
  return f.solve(b);
}

template <typename Scalar>
bool is_nonsingular(const Matrix<Scalar> &m) {
  try {
    lu_factor(m);
    return true;
  } catch (const Error &e) {
    if (e.kind() == ErrorKind::SingularMatrix)
      return false;
    throw;
  }
}

/// S - R P^{-1} Q for pi = [[P, Q], [R, S]] with P of size top_left_dim.
template <typename Scalar>
Matrix<Scalar> schur_complement(const Matrix<Scalar> &pi, Eigen::Index top_left_dim) {
  if (pi.rows() != pi.cols())
    throw Error(ErrorKind::DimensionMismatch, "schur_complement: matrix is not square");
  if (top_left_dim <= 0 || top_left_dim >= pi.rows())
    throw Error(ErrorKind::DimensionMismatch,
                "schur_complement: leading block size must lie strictly inside the matrix");
  const Eigen::Index n = pi.rows();
  const Eigen::Index p = top_left_dim;
  const Eigen::Index s = n - p;
  const Matrix<Scalar> top_left = pi.topLeftCorner(p, p);
  const auto lu = lu_factor(top_left);
  const Matrix<Scalar> top_right = pi.topRightCorner(p, s);
  return pi.bottomRightCorner(s, s) - pi.bottomLeftCorner(s, p) * lu.solve(top_right);
}

/// Central-difference Jacobian of `f` at `at`. Column j is
/// (f(at + h e_j) - f(at - h e_j)) / (2h).
template <typename Scalar, typename Fn>
Matrix<Scalar> fd_jacobian(Fn &&f, const Vector<Scalar> &at, Scalar h = Scalar(kDefaultFdStep)) {
  if (!(h > Scalar(0)))
    throw Error(ErrorKind::InvalidArgument, "fd_jacobian: step must be positive");
  Vector<Scalar> probe = at;
  Matrix<Scalar> jac;
  for (Eigen::Index j = 0; j < at.size(); ++j) {
    probe(j) = at(j) + h;
    const Vector<Scalar> plus = f(probe);
    probe(j) = at(j) - h;
    const Vector<Scalar> minus = f(probe);
    probe(j) = at(j);
    if (j == 0)
      jac.resize(plus.size(), at.size());
    jac.col(j) = (plus - minus) / (Scalar(2) * h);
  }
  return jac;
}

} // namespace esoclcp
