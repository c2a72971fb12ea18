#pragma once

#include <limits>
#include <vector>

#include "esoclcp/linalg.hpp"

namespace esoclcp {

/// Decide whether {y >= 0 : eq * y = rhs} is nonempty.
///
/// Phase-one simplex on a dense tableau with Bland's rule, so degenerate
/// systems terminate. Intended for the small systems met by s0_check.
template <typename Scalar>
bool phase_one_feasible(const Matrix<Scalar> &eq, const Vector<Scalar> &rhs,
                        Scalar feas_tol = Scalar(1e-9)) {
  if (eq.rows() != rhs.size())
    throw Error(ErrorKind::DimensionMismatch, "constraint rows and rhs disagree");
  const Eigen::Index rows = eq.rows();
  const Eigen::Index vars = eq.cols();
  const Eigen::Index cols = vars + rows; // originals then artificials
  const Scalar pivot_tol = Scalar(1e-12);

  Matrix<Scalar> tab(rows, cols + 1);
  tab.setZero();
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Scalar sign = rhs(i) < Scalar(0) ? Scalar(-1) : Scalar(1);
    tab.row(i).head(vars) = sign * eq.row(i);
    tab(i, vars + i) = Scalar(1);
    tab(i, cols) = sign * rhs(i);
  }
  std::vector<Eigen::Index> basis(rows);
  for (Eigen::Index i = 0; i < rows; ++i)
    basis[i] = vars + i;

  // Reduced costs for min sum(artificials).
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> cost = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>::Zero(cols + 1);
  cost.tail(rows + 1).setOnes();
  cost(cols) = Scalar(0);
  for (Eigen::Index i = 0; i < rows; ++i)
    cost -= tab.row(i);

  const int max_pivots = 50 * static_cast<int>(cols + 1) * static_cast<int>(rows + 1);
  for (int iter = 0; iter < max_pivots; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (cost(j) < -pivot_tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0)
      break;

    Eigen::Index leave = -1;
    Scalar best = std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (tab(i, enter) > pivot_tol) {
        const Scalar ratio = tab(i, cols) / tab(i, enter);
        if (ratio < best - pivot_tol ||
            (ratio <= best + pivot_tol && leave >= 0 && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0)
      break; // unbounded direction; cannot happen for a phase-one objective bounded below

    tab.row(leave) /= tab(leave, enter);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i != leave && tab(i, enter) != Scalar(0))
        tab.row(i) -= tab(i, enter) * tab.row(leave);
    }
    cost -= cost(enter) * tab.row(leave);
    basis[leave] = enter;
  }

  Scalar infeasibility(0);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (basis[i] >= vars)
      infeasibility += tab(i, cols);
  }
  return infeasibility <= feas_tol;
}

} // namespace esoclcp
