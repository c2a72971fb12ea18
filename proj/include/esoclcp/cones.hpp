#pragma once

#include <optional>
#include <string>

#include "esoclcp/linalg.hpp"

namespace esoclcp {

/// Default relative tolerance for cone membership tests.
inline constexpr double kDefaultConeTol = 1e-9;

/// Dimensions of the extended second order cone L(k, l) in R^k x R^l.
class EsocDims {
public:
  EsocDims(Eigen::Index k, Eigen::Index l) : k_(k), l_(l) {
    if (k < 1 || l < 1)
      throw Error(ErrorKind::InvalidArgument,
                  "cone dimensions require k >= 1 and l >= 1, got k=" + std::to_string(k) +
                      ", l=" + std::to_string(l));
  }

  Eigen::Index k() const { return k_; }
  Eigen::Index l() const { return l_; }
  Eigen::Index m() const { return k_ + l_; }

  friend bool operator==(const EsocDims &, const EsocDims &) = default;

private:
  Eigen::Index k_;
  Eigen::Index l_;
};

/// A point (x, u) of R^k x R^l.
template <typename Scalar>
struct PointZ {
  Vector<Scalar> x;
  Vector<Scalar> u;

  EsocDims dims() const { return EsocDims(x.size(), u.size()); }

  Vector<Scalar> stacked() const {
    Vector<Scalar> out(x.size() + u.size());
    out << x, u;
    return out;
  }

  static PointZ split(const Vector<Scalar> &stacked, const EsocDims &dims) {
    if (stacked.size() != dims.m())
      throw Error(ErrorKind::DimensionMismatch, "stacked point has wrong length");
    return PointZ{stacked.head(dims.k()), stacked.tail(dims.l())};
  }
};

namespace detail {

template <typename Scalar>
void require_same_dims(const PointZ<Scalar> &a, const PointZ<Scalar> &b) {
  if (a.x.size() != b.x.size() || a.u.size() != b.u.size())
    throw Error(ErrorKind::DimensionMismatch, "points live in different spaces");
}

template <typename Scalar>
void require_valid(const PointZ<Scalar> &z) {
  (void)z.dims();
}

} // namespace detail

/// (x, u) in L(k, l): every x_i >= ||u||.
template <typename Scalar>
bool in_L(const PointZ<Scalar> &z, Scalar tol = Scalar(kDefaultConeTol)) {
  detail::require_valid(z);
  const Scalar nu = z.u.norm();
  return z.x.minCoeff() >= nu - tol * (Scalar(1) + nu);
}

/// (x, u) in M(k, l): e^T x >= ||u|| and x >= 0.
template <typename Scalar>
bool in_M(const PointZ<Scalar> &z, Scalar tol = Scalar(kDefaultConeTol)) {
  detail::require_valid(z);
  const Scalar nu = z.u.norm();
  return z.x.sum() >= nu - tol * (Scalar(1) + nu) && z.x.minCoeff() >= -tol;
}

/// (z, w) in C(L): z in L, w in M = L*, <z, w> = 0.
template <typename Scalar>
bool comp_pair_check(const PointZ<Scalar> &z, const PointZ<Scalar> &w,
                     Scalar tol = Scalar(kDefaultConeTol)) {
  detail::require_valid(z);
  detail::require_same_dims(z, w);
  const Scalar inner = z.x.dot(w.x) + z.u.dot(w.u);
  const Scalar scale = std::sqrt(z.x.squaredNorm() + z.u.squaredNorm()) *
                       std::sqrt(w.x.squaredNorm() + w.u.squaredNorm());
  return in_L(z, tol) && in_M(w, tol) && std::abs(inner) <= tol * (Scalar(1) + scale);
}

/// Largest violation of (a, b) in C(R^k_+): negativity of either side or
/// a nonzero componentwise product.
template <typename Scalar>
Scalar orthant_comp_violation(const Vector<Scalar> &a, const Vector<Scalar> &b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "orthant pair has mismatched lengths");
  Scalar worst(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    worst = std::max({worst, -a(i), -b(i), std::abs(a(i) * b(i))});
  }
  return worst;
}

/// (a, b) in C(R^k_+) up to a tolerance relative to the magnitudes involved.
template <typename Scalar>
bool in_orthant_comp(const Vector<Scalar> &a, const Vector<Scalar> &b, Scalar tol) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "orthant pair has mismatched lengths");
  const Scalar na = inf_norm(a);
  const Scalar nb = inf_norm(b);
  if (a.size() > 0 && (a.minCoeff() < -tol * (Scalar(1) + na) || b.minCoeff() < -tol * (Scalar(1) + nb)))
    return false;
  return std::abs(a.dot(b)) <= tol * (Scalar(1) + a.norm() * b.norm());
}

enum class PairCase { UZero, VZero, General, NotComplementary };

inline const char *to_string(PairCase c) {
  switch (c) {
  case PairCase::UZero: return "U_ZERO";
  case PairCase::VZero: return "V_ZERO";
  case PairCase::General: return "GENERAL";
  case PairCase::NotComplementary: return "NOT_COMPLEMENTARY";
  }
  return "?";
}

/// Multiplier of the generic complementary pair: v = -lambda u.
template <typename Scalar>
struct CertificateIII {
  Scalar lambda;
  /// Largest residual among v + lambda u = 0, e^T y = ||v|| and
  /// (x - ||u|| e, y) in C(R^k_+).
  Scalar max_violation;
};

template <typename Scalar>
struct PairClassification {
  PairCase label;
  std::optional<CertificateIII<Scalar>> certificate;
};

/// Sort a pair (z, w) = ((x, u), (y, v)) into the three shapes a
/// complementary pair on L can take.
///
/// Returns NOT_COMPLEMENTARY exactly when comp_pair_check rejects the pair.
/// A pair with u = v = 0 is reported as U_ZERO.
template <typename Scalar>
PairClassification<Scalar> classify_pair(const PointZ<Scalar> &z, const PointZ<Scalar> &w,
                                         Scalar tol = Scalar(kDefaultConeTol)) {
  if (!comp_pair_check(z, w, tol))
    return {PairCase::NotComplementary, std::nullopt};
  const Scalar zn = z.stacked().norm();
  const Scalar wn = w.stacked().norm();
  const Scalar nu = z.u.norm();
  const Scalar nv = w.u.norm();
  if (nu <= tol * (Scalar(1) + zn))
    return {PairCase::UZero, std::nullopt};
  if (nv <= tol * (Scalar(1) + wn))
    return {PairCase::VZero, std::nullopt};

  const Scalar lambda = w.x.sum() / nu;
  const Vector<Scalar> shifted = z.x.array() - nu;
  const Scalar violation =
      std::max({inf_norm(Vector<Scalar>(w.u + lambda * z.u)), std::abs(w.x.sum() - nv),
                orthant_comp_violation(shifted, w.x)});
  return {PairCase::General, CertificateIII<Scalar>{lambda, violation}};
}

} // namespace esoclcp
