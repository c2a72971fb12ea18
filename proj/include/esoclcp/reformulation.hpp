#pragma once

#include <optional>
#include <string>

#include "esoclcp/cones.hpp"
#include "esoclcp/linalg.hpp"

namespace esoclcp {

/// LCP(T, r, L(k, l)) data with the block partition
///   T = [[A, B], [C, D]],  r = (p, q).
///
/// T, A and D are checked for nonsingularity at construction unless the
/// caller opts out.
template <typename Scalar>
class LcpProblem {
public:
  using MatrixType = Matrix<Scalar>;
  using VectorType = Vector<Scalar>;

  LcpProblem(EsocDims dims, MatrixType T, VectorType r, bool check_nonsingular = true)
      : dims_(dims), T_(std::move(T)), r_(std::move(r)) {
    const auto m = dims_.m();
    if (T_.rows() != m || T_.cols() != m)
      throw Error(ErrorKind::DimensionMismatch,
                  "T must be " + std::to_string(m) + "x" + std::to_string(m) + ", got " +
                      std::to_string(T_.rows()) + "x" + std::to_string(T_.cols()));
    if (r_.size() != m)
      throw Error(ErrorKind::DimensionMismatch,
                  "r must have length " + std::to_string(m) + ", got " + std::to_string(r_.size()));
    require_finite(T_, "T");
    require_finite(r_, "r");

    const auto k = dims_.k();
    const auto l = dims_.l();
    A_ = T_.topLeftCorner(k, k);
    B_ = T_.topRightCorner(k, l);
    C_ = T_.bottomLeftCorner(l, k);
    D_ = T_.bottomRightCorner(l, l);
    p_ = r_.head(k);
    q_ = r_.tail(l);

    if (check_nonsingular) {
      check_block(T_, "T");
      check_block(D_, "D");
      a_lu_ = check_block(A_, "A");
    } else if (is_nonsingular(A_)) {
      a_lu_ = lu_factor(A_);
    }
  }

  const EsocDims &dims() const { return dims_; }
  const MatrixType &T() const { return T_; }
  const VectorType &r() const { return r_; }
  const MatrixType &A() const { return A_; }
  const MatrixType &B() const { return B_; }
  const MatrixType &C() const { return C_; }
  const MatrixType &D() const { return D_; }
  const VectorType &p() const { return p_; }
  const VectorType &q() const { return q_; }

  /// Factors of A, absent only when the nonsingularity check was skipped
  /// and A turned out singular.
  const std::optional<LuFactors<Scalar>> &a_factors() const { return a_lu_; }

  /// (y, v) = T z + r.
  PointZ<Scalar> image(const PointZ<Scalar> &z) const {
    require_dims(z);
    return PointZ<Scalar>{A_ * z.x + B_ * z.u + p_, C_ * z.x + D_ * z.u + q_};
  }

  void require_dims(const PointZ<Scalar> &z) const {
    if (z.x.size() != dims_.k() || z.u.size() != dims_.l())
      throw Error(ErrorKind::DimensionMismatch, "point does not match problem dimensions");
  }

private:
  static LuFactors<Scalar> check_block(const MatrixType &m, const char *name) {
    try {
      return lu_factor(m);
    } catch (const Error &e) {
      if (e.kind() == ErrorKind::SingularMatrix)
        throw Error(ErrorKind::SingularMatrix, std::string("block ") + name + " is singular");
      throw;
    }
  }

  EsocDims dims_;
  MatrixType T_;
  VectorType r_;
  MatrixType A_, B_, C_, D_;
  VectorType p_, q_;
  std::optional<LuFactors<Scalar>> a_lu_;
};

/// Unknown of the smooth mixed problem: xhat = x - t e, u, and t standing in
/// for ||u||. No sign constraints; iterates may be infeasible.
template <typename Scalar>
struct MixCpPoint {
  Vector<Scalar> xhat;
  Vector<Scalar> u;
  Scalar t{0};

  Eigen::Index size() const { return xhat.size() + u.size() + 1; }

  Vector<Scalar> pack() const {
    Vector<Scalar> out(size());
    out << xhat, u, t;
    return out;
  }

  static MixCpPoint unpack(const Vector<Scalar> &flat, const EsocDims &dims) {
    if (flat.size() != dims.m() + 1)
      throw Error(ErrorKind::DimensionMismatch, "packed MixCP point has wrong length");
    return MixCpPoint{flat.head(dims.k()), flat.segment(dims.k(), dims.l()), flat(dims.m())};
  }

  /// The augmented image (x - ||u|| e, u, ||u||) of an ESOCLCP point.
  static MixCpPoint from_solution(const PointZ<Scalar> &z) {
    const Scalar nu = z.u.norm();
    return MixCpPoint{z.x.array() - nu, z.u, nu};
  }
};

template <typename Scalar>
struct MicpResidual {
  Scalar f2_norm;
  Scalar comp_violation;
};

namespace detail {

template <typename Scalar>
void require_dims(const LcpProblem<Scalar> &prob, const MixCpPoint<Scalar> &w) {
  if (w.xhat.size() != prob.dims().k() || w.u.size() != prob.dims().l())
    throw Error(ErrorKind::DimensionMismatch, "MixCP point does not match problem dimensions");
}

} // namespace detail

/// F1~(w) = A (xhat + t e) + B u + p.
template <typename Scalar>
Vector<Scalar> f1_tilde(const LcpProblem<Scalar> &prob, const MixCpPoint<Scalar> &w) {
  detail::require_dims(prob, w);
  const Vector<Scalar> x = w.xhat.array() + w.t;
  return prob.A() * x + prob.B() * w.u + prob.p();
}

/// F2~(w): the l-vector (tC + u e^T A)(xhat + t e) + u e^T (B u + p) + t (D u + q)
/// followed by t^2 - ||u||^2.
template <typename Scalar>
Vector<Scalar> f2_tilde(const LcpProblem<Scalar> &prob, const MixCpPoint<Scalar> &w) {
  detail::require_dims(prob, w);
  const auto l = prob.dims().l();
  const Vector<Scalar> x = w.xhat.array() + w.t;
  const Vector<Scalar> y = prob.A() * x + prob.B() * w.u + prob.p();
  const Vector<Scalar> v = prob.C() * x + prob.D() * w.u + prob.q();
  Vector<Scalar> out(l + 1);
  // t v + u e^T y expands to the polynomial form above.
  out.head(l) = w.t * v + w.u * y.sum();
  out(l) = w.t * w.t - w.u.squaredNorm();
  return out;
}

/// Analytic differentials of (F1~, F2~) with respect to (xhat, (u, t)).
template <typename Scalar>
struct JacobianBlocks {
  Matrix<Scalar> a_tilde; ///< k x k, dF1~/dxhat
  Matrix<Scalar> b_tilde; ///< k x (l+1), dF1~/d(u,t)
  Matrix<Scalar> c_tilde; ///< (l+1) x k, dF2~/dxhat
  Matrix<Scalar> d_tilde; ///< (l+1) x (l+1), dF2~/d(u,t)

  Matrix<Scalar> assemble() const {
    const auto k = a_tilde.rows();
    const auto n = k + d_tilde.rows();
    Matrix<Scalar> pi(n, n);
    pi << a_tilde, b_tilde, c_tilde, d_tilde;
    return pi;
  }
};

template <typename Scalar>
JacobianBlocks<Scalar> jacobian_blocks(const LcpProblem<Scalar> &prob, const MixCpPoint<Scalar> &w) {
  detail::require_dims(prob, w);
  const auto k = prob.dims().k();
  const auto l = prob.dims().l();
  const auto &A = prob.A();
  const auto &B = prob.B();
  const auto &C = prob.C();
  const auto &D = prob.D();
  const Scalar t = w.t;
  const Vector<Scalar> e = Vector<Scalar>::Ones(k);
  const Vector<Scalar> x = w.xhat.array() + t;
  const Vector<Scalar> y = A * x + B * w.u + prob.p();
  const Vector<Scalar> ae = A * e;

  JacobianBlocks<Scalar> j;
  j.a_tilde = A;

  j.b_tilde.resize(k, l + 1);
  j.b_tilde << B, ae;

  // e^T A as a row
  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> eta = A.colwise().sum();
  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> etb = B.colwise().sum();

  j.c_tilde = Matrix<Scalar>::Zero(l + 1, k);
  j.c_tilde.topRows(l) = t * C + w.u * eta;

  j.d_tilde.resize(l + 1, l + 1);
  j.d_tilde.topLeftCorner(l, l) =
      y.sum() * Matrix<Scalar>::Identity(l, l) + w.u * etb + t * D;
  j.d_tilde.topRightCorner(l, 1) =
      C * w.xhat + Scalar(2) * t * (C * e) + w.u * ae.sum() + D * w.u + prob.q();
  j.d_tilde.bottomLeftCorner(1, l) = Scalar(-2) * w.u.transpose();
  j.d_tilde(l, l) = Scalar(2) * t;
  return j;
}

/// u = 0 branch: (x, Ax + p) in C(R^k_+) and e^T (Ax + p) >= ||Cx + q||.
template <typename Scalar>
bool case_i_check(const LcpProblem<Scalar> &prob, const Vector<Scalar> &x,
                  Scalar tol = Scalar(kDefaultConeTol)) {
  if (x.size() != prob.dims().k())
    throw Error(ErrorKind::DimensionMismatch, "case (i) candidate has wrong length");
  const Vector<Scalar> y = prob.A() * x + prob.p();
  const Scalar nv = (prob.C() * x + prob.q()).norm();
  return in_orthant_comp(x, y, tol) && y.sum() >= nv - tol * (Scalar(1) + nv);
}

/// v = 0 branch: Cx + Du + q = 0, (x, Ax + Bu + p) in C(R^k_+), x >= ||u|| e.
template <typename Scalar>
bool case_ii_check(const LcpProblem<Scalar> &prob, const PointZ<Scalar> &z,
                   Scalar tol = Scalar(kDefaultConeTol)) {
  prob.require_dims(z);
  const auto img = prob.image(z);
  const Scalar v_scale = Scalar(1) + inf_norm(Vector<Scalar>(prob.C() * z.x)) +
                         inf_norm(Vector<Scalar>(prob.D() * z.u)) + inf_norm(prob.q());
  const Scalar nu = z.u.norm();
  return inf_norm(img.u) <= tol * v_scale && in_orthant_comp(z.x, img.x, tol) &&
         z.x.minCoeff() >= nu - tol * (Scalar(1) + nu);
}

/// Residuals of the implicit mixed form with G1(x, u) = x - ||u|| e.
template <typename Scalar>
MicpResidual<Scalar> micp_residual_iii(const LcpProblem<Scalar> &prob, const PointZ<Scalar> &z) {
  prob.require_dims(z);
  const Scalar nu = z.u.norm();
  if (nu == Scalar(0))
    throw Error(ErrorKind::ZeroU, "implicit mixed form requires u != 0");
  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> eta = prob.A().colwise().sum();
  const Vector<Scalar> bu_p = prob.B() * z.u + prob.p();
  const Vector<Scalar> f2 = (nu * prob.C() + z.u * eta) * z.x + z.u * bu_p.sum() +
                            nu * (prob.D() * z.u + prob.q());
  const Vector<Scalar> y = prob.A() * z.x + bu_p;
  const Vector<Scalar> g1 = z.x.array() - nu;
  return {inf_norm(f2), orthant_comp_violation(g1, y)};
}

/// Same residuals written in the shifted variable xhat = x - ||u|| e.
template <typename Scalar>
MicpResidual<Scalar> micp_residual_iv(const LcpProblem<Scalar> &prob, const PointZ<Scalar> &zhat) {
  prob.require_dims(zhat);
  const Scalar nu = zhat.u.norm();
  if (nu == Scalar(0))
    throw Error(ErrorKind::ZeroU, "shifted mixed form requires u != 0");
  return micp_residual_iii(prob, PointZ<Scalar>{zhat.x.array() + nu, zhat.u});
}

template <typename Scalar>
struct IcpFormV {
  Vector<Scalar> f1;
  Vector<Scalar> f2;
};

/// Explicit u-only form, defined when l == k and ||u|| C + u e^T A is
/// invertible.
///
/// f2 = (||u|| C + u e^T A)^{-1} (u e^T (Bu + p) + ||u|| (Du + q)) and
/// f1 = A f2 + B u + p, as written. Note that x = -f2 is the point that
/// zeroes the implicit residual.
template <typename Scalar>
IcpFormV<Scalar> icp_form_v(const LcpProblem<Scalar> &prob, const Vector<Scalar> &u) {
  if (prob.dims().k() != prob.dims().l())
    throw Error(ErrorKind::ShapeUnsupported, "explicit form needs k == l");
  if (u.size() != prob.dims().l())
    throw Error(ErrorKind::DimensionMismatch, "u has wrong length");
  const Scalar nu = u.norm();
  if (nu == Scalar(0))
    throw Error(ErrorKind::ZeroU, "explicit form requires u != 0");
  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> eta = prob.A().colwise().sum();
  const Matrix<Scalar> m = nu * prob.C() + u * eta;
  const Vector<Scalar> bu_p = prob.B() * u + prob.p();
  const Vector<Scalar> rhs = u * bu_p.sum() + nu * (prob.D() * u + prob.q());
  IcpFormV<Scalar> out;
  out.f2 = lu_factor(m).solve(rhs);
  out.f1 = prob.A() * out.f2 + bu_p;
  return out;
}

/// Map an augmented point back to z = (xhat + t e, u).
template <typename Scalar>
PointZ<Scalar> recover_solution(const MixCpPoint<Scalar> &w, Scalar tol = Scalar(kDefaultConeTol)) {
  if (!(w.t > tol))
    throw Error(ErrorKind::DegenerateT,
                "t = " + std::to_string(static_cast<double>(w.t)) + " is not strictly positive");
  const Scalar gap = std::abs(w.t * w.t - w.u.squaredNorm());
  if (gap > tol * (Scalar(1) + w.t * w.t))
    throw Error(ErrorKind::InvalidArgument, "t does not match ||u||");
  if (w.xhat.size() > 0 && w.xhat.minCoeff() < -tol)
    throw Error(ErrorKind::InfeasibleXhat, "xhat has a negative component");
  return PointZ<Scalar>{w.xhat.array() + w.t, w.u};
}

} // namespace esoclcp
