#include "esoclcp/generator.hpp"

#include <random>

namespace esoclcp {

namespace {

constexpr double kEntryBound = 50.0;
constexpr double kMinNormU = 0.1;

class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return detail::uniform<double>(gen_, lo, hi); }

  bool coin() { return (gen_() >> 63) != 0; }

  Vector<double> uniform_vector(Eigen::Index n, double lo, double hi) {
    Vector<double> v(n);
    for (Eigen::Index i = 0; i < n; ++i)
      v(i) = uniform(lo, hi);
    return v;
  }

  Vector<double> nonzero_u(Eigen::Index l) {
    for (;;) {
      Vector<double> u = uniform_vector(l, -1.0, 1.0);
      if (u.norm() >= kMinNormU)
        return u;
    }
  }

  Vector<double> unit_vector(Eigen::Index l) {
    for (;;) {
      Vector<double> d = uniform_vector(l, -1.0, 1.0);
      const double n = d.norm();
      if (n >= kMinNormU && n <= 1.0)
        return d / n;
    }
  }

  /// Random support mask with at least one entry set.
  std::vector<bool> support(Eigen::Index k) {
    for (;;) {
      std::vector<bool> mask(static_cast<std::size_t>(k));
      bool any = false;
      for (auto &&b : mask) {
        b = coin();
        any = any || b;
      }
      if (any)
        return mask;
    }
  }

  Matrix<double> matrix(Eigen::Index k, Eigen::Index l) {
    const Eigen::Index m = k + l;
    for (;;) {
      Matrix<double> T(m, m);
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
          T(i, j) = uniform(-kEntryBound, kEntryBound);
      if (is_nonsingular<double>(T) && is_nonsingular<double>(T.topLeftCorner(k, k)) &&
          is_nonsingular<double>(T.bottomRightCorner(l, l)))
        return T;
    }
  }

private:
  std::mt19937_64 gen_;
};

} // namespace

GenCase parse_gen_case(const std::string &name) {
  if (name == "i")
    return GenCase::UZero;
  if (name == "ii")
    return GenCase::VZero;
  if (name == "vi")
    return GenCase::General;
  if (name == "random")
    return GenCase::Random;
  throw Error(ErrorKind::InvalidArgument, "unknown case '" + name + "' (expected i, ii, vi or random)");
}

const char *to_string(GenCase c) {
  switch (c) {
  case GenCase::UZero: return "i";
  case GenCase::VZero: return "ii";
  case GenCase::General: return "vi";
  case GenCase::Random: return "random";
  }
  return "?";
}

GeneratedInstance generate_instance(Eigen::Index k, Eigen::Index l, GenCase which, std::uint64_t seed) {
  const EsocDims dims(k, l);
  Sampler rng(seed);
  const Matrix<double> T = rng.matrix(k, l);
  const auto A = T.topLeftCorner(k, k);
  const auto B = T.topRightCorner(k, l);
  const auto C = T.bottomLeftCorner(l, k);
  const auto D = T.bottomRightCorner(l, l);

  GeneratedInstance out;
  out.problem.k = k;
  out.problem.l = l;
  out.problem.T = T;
  out.problem.comment = std::string("generated: case ") + to_string(which) + ", seed " + std::to_string(seed);

  if (which == GenCase::Random) {
    out.problem.r = rng.uniform_vector(dims.m(), -kEntryBound, kEntryBound);
    return out;
  }

  Vector<double> x(k), u(l), y(k), v(l);
  switch (which) {
  case GenCase::General: {
    // v = -lambda u, e^T y = lambda ||u||, x = ||u|| e + s with s^T y = 0.
    u = rng.nonzero_u(l);
    const double nu = u.norm();
    const double lambda = rng.uniform(0.5, 2.0);
    const auto mask = rng.support(k);
    Vector<double> s = Vector<double>::Zero(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (mask[static_cast<std::size_t>(i)])
        y(i) = rng.uniform(0.1, 1.0);
      else {
        y(i) = 0.0;
        s(i) = rng.uniform(0.0, 1.0);
      }
    }
    y *= lambda * nu / y.sum();
    x = s.array() + nu;
    v = -lambda * u;
    break;
  }
  case GenCase::UZero: {
    // u = 0, (x, y) complementary, ||v|| <= e^T y.
    u.setZero();
    const auto mask = rng.support(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (mask[static_cast<std::size_t>(i)]) {
        x(i) = 0.0;
        y(i) = rng.uniform(0.1, 1.0);
      } else {
        x(i) = rng.uniform(0.0, 1.0);
        y(i) = 0.0;
      }
    }
    v = rng.uniform(0.0, 1.0) * y.sum() * rng.unit_vector(l);
    break;
  }
  case GenCase::VZero: {
    // v = 0, x >= ||u|| e > 0 forces y = 0.
    u = rng.nonzero_u(l);
    x = rng.uniform_vector(k, 0.0, 1.0).array() + u.norm();
    y.setZero();
    v.setZero();
    break;
  }
  case GenCase::Random:
    break;
  }

  out.problem.r.resize(dims.m());
  out.problem.r.head(k) = y - A * x - B * u;
  out.problem.r.tail(l) = v - C * x - D * u;

  io::SolutionFile sol;
  sol.k = k;
  sol.l = l;
  sol.x = x;
  sol.u = u;
  sol.comment = "constructed solution for " + out.problem.comment;
  out.solution = sol;
  return out;
}

} // namespace esoclcp
