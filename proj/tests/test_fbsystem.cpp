#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "esoclcp/fbsystem.hpp"
#include "esoclcp/fixtures.hpp"
#include "esoclcp/generator.hpp"
#include "esoclcp/solvers.hpp"
#include "test_helpers.hpp"

using namespace esoclcp;
using namespace testing_helpers;
using Mat = Matrix<double>;
using Vec = Vector<double>;
using W = MixCpPoint<double>;

namespace {

LcpProblem<double> reconstructed() { return paper_example_reconstructed().to_problem(); }

W converged_reconstructed() {
  SolverOptions<double> opts;
  const auto report = solve_esoclcp(reconstructed(), opts);
  EXPECT_TRUE(report.verified);
  return report.point;
}

LcpProblem<double> small_problem(Rng &rng, Eigen::Index k, Eigen::Index l) {
  for (;;) {
    const Mat T = rng.matrix(k + l, k + l, -2, 2);
    if (is_nonsingular<double>(T) && is_nonsingular<double>(T.topLeftCorner(k, k)) &&
        is_nonsingular<double>(T.bottomRightCorner(l, l)))
      return LcpProblem<double>(EsocDims(k, l), T, rng.vector(k + l, -2, 2));
  }
}

bool complementary(double a, double b) { return a >= 0 && b >= 0 && std::abs(a * b) <= 1e-12; }

// Every point of {x >= 0, m x >= 0, e^T x = 1} that is a vertex, by enumeration.
bool s0_by_vertices(const Mat &m) {
  const Eigen::Index n = m.rows();
  // Constraint rows: x_i >= 0 (i < n), (m x)_i >= 0 (n <= i < 2n).
  Mat g(2 * n, n);
  g << Mat::Identity(n, n), m;
  std::vector<int> pick(static_cast<std::size_t>(n - 1));
  std::function<bool(int, int)> rec = [&](int start, int depth) -> bool {
    if (depth == n - 1) {
      Mat sys(n, n);
      Vec rhs = Vec::Zero(n);
      for (int i = 0; i < n - 1; ++i)
        sys.row(i) = g.row(pick[static_cast<std::size_t>(i)]);
      sys.row(n - 1).setOnes();
      rhs(n - 1) = 1.0;
      Eigen::FullPivLU<Mat> lu(sys);
      if (!lu.isInvertible())
        return false;
      const Vec x = lu.solve(rhs);
      return (g * x).minCoeff() >= -1e-9;
    }
    for (int c = start; c < 2 * n; ++c) {
      pick[static_cast<std::size_t>(depth)] = c;
      if (rec(c + 1, depth + 1))
        return true;
    }
    return false;
  };
  return rec(0, 0);
}

} // namespace

TEST(PsiFb, Examples) {
  EXPECT_EQ(psi_fb(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(psi_fb(3.0, 4.0), -2.0);
  EXPECT_DOUBLE_EQ(psi_fb(-1.0, 0.0), 2.0);
}

TEST(PsiFb, NcpEquivalenceOnGridAndRandomPairs) {
  auto check = [](double a, double b) {
    EXPECT_EQ(std::abs(psi_fb(a, b)) <= 1e-12, complementary(a, b)) << a << ", " << b;
  };
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 40; ++j)
      check(-2.0 + 0.1 * i, -2.0 + 0.1 * j);
  Rng rng(31);
  for (int rep = 0; rep < 1000; ++rep) {
    double a = rng(-2, 2), b = rng(-2, 2);
    if (rep % 4 == 1)
      a = 0.0;
    if (rep % 4 == 2)
      b = 0.0;
    check(a, b);
  }
}

TEST(PsiFb, PartialsAtKnownPoints) {
  const auto [da, db] = psi_fb_partials(3.0, 4.0);
  EXPECT_DOUBLE_EQ(da, -2.0 / 5.0);
  EXPECT_DOUBLE_EQ(db, -1.0 / 5.0);
  const auto [ka, kb] = psi_fb_partials(0.0, 0.0);
  EXPECT_DOUBLE_EQ(ka, 1.0 / std::sqrt(2.0) - 1.0);
  EXPECT_DOUBLE_EQ(kb, 1.0 / std::sqrt(2.0) - 1.0);
}

TEST(FbResidual, ZeroAtConstructedSolutions) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = generate_instance(1 + seed % 5, 1 + seed % 4, GenCase::General, seed);
    const auto w = W::from_solution(inst.solution->point());
    EXPECT_LE(inf_norm(fb_residual(inst.problem.to_problem(), w)), 1e-10) << seed;
  }
}

TEST(FbResidual, SmallAtPublishedPoint) {
  EXPECT_LE(inf_norm(fb_residual(reconstructed(), paper_augmented_solution())), 1e-3);
}

TEST(FbResidual, IdentityAtOrigin) {
  const LcpProblem<double> prob(EsocDims(3, 2), Mat::Identity(5, 5), Vec::Zero(5));
  EXPECT_EQ(fb_residual(prob, W{Vec::Zero(3), Vec::Zero(2), 0.0}), Vec::Zero(6));
}

TEST(FbResidual, ZeroIffMixedComplementarity) {
  Rng rng(32);
  int zeros = 0, nonzeros = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = generate_instance(1 + seed % 4, 1 + seed % 3, GenCase::General, seed);
    const auto prob = inst.problem.to_problem();
    W w = W::from_solution(inst.solution->point());
    if (seed % 2 == 1) {
      const auto n = w.size();
      w = W::unpack(Vec(w.pack() + 1e-3 * rng.vector(n, -1, 1)), prob.dims());
    }
    const bool res_zero = inf_norm(fb_residual(prob, w)) <= 1e-8;
    const bool mixed = orthant_comp_violation(w.xhat, f1_tilde(prob, w)) <= 1e-7 &&
                       inf_norm(f2_tilde(prob, w)) <= 1e-7;
    EXPECT_EQ(res_zero, mixed) << seed;
    (res_zero ? zeros : nonzeros)++;
  }
  EXPECT_EQ(zeros, 30);
  EXPECT_EQ(nonzeros, 30);
}

TEST(FbJacobian, AgreesWithFiniteDifferencesAwayFromKinks) {
  Rng rng(33);
  double worst = 0.0;
  int checked = 0;
  while (checked < 100) {
    const auto prob = checked < 10 ? reconstructed() : random_problem(rng, 1 + rng.index(5), 1 + rng.index(5));
    const auto dims = prob.dims();
    W w{rng.vector(dims.k(), -1, 1), rng.vector(dims.l(), -1, 1), rng(0.2, 1.5)};
    if (w.u.norm() < 0.1)
      continue;
    const Vec f1 = f1_tilde(prob, w);
    bool far = true;
    for (Eigen::Index i = 0; i < dims.k(); ++i)
      far = far && std::hypot(w.xhat(i), f1(i)) >= 1e-3;
    if (!far)
      continue;
    const Mat fd = fd_jacobian<double>([&](const Vec &v) { return fb_residual(prob, W::unpack(v, dims)); }, w.pack());
    worst = std::max(worst, rel_err(fb_jacobian(prob, w), fd));
    ++checked;
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(FbJacobian, RowUsesPartials) {
  // T = I, p_1 = 1: at xhat_1 = 3, t = 0, F1~_1 = 4.
  const LcpProblem<double> prob(EsocDims(3, 2), Mat::Identity(5, 5), vec({1, 0, 0, 0, 0}));
  const W w{vec({3, 1, 1}), vec({0.5, 0.5}), 0.0};
  const Mat j = fb_jacobian(prob, w);
  EXPECT_DOUBLE_EQ(j(0, 0), -2.0 / 5.0 + (-1.0 / 5.0) * 1.0);
}

TEST(FbJacobian, DegeneratePairUsesFixedElement) {
  const LcpProblem<double> prob(EsocDims(1, 1), Mat::Identity(2, 2), Vec::Zero(2));
  const Mat j = fb_jacobian(prob, W{Vec::Zero(1), vec({0.0}), 0.0});
  const double d = 1.0 / std::sqrt(2.0) - 1.0;
  EXPECT_DOUBLE_EQ(j(0, 0), d + d * 1.0);
}

TEST(Merit, MatchesResidualAndJacobian) {
  Rng rng(34);
  for (int rep = 0; rep < 30; ++rep) {
    const auto prob = random_problem(rng, 1 + rng.index(4), 1 + rng.index(4));
    const W w{rng.vector(prob.dims().k(), -1, 1), rng.vector(prob.dims().l(), -1, 1), rng(0, 2)};
    const auto ev = evaluate_fb_system(prob, w);
    EXPECT_GE(ev.merit, 0.0);
    EXPECT_NEAR(ev.merit, 0.5 * ev.residual.squaredNorm(), 1e-12 * (1 + ev.merit));
    EXPECT_LE(inf_norm(Vec(ev.grad_merit - ev.jacobian.transpose() * ev.residual)),
              1e-12 * (1 + inf_norm(ev.grad_merit)));
    EXPECT_EQ(merit(prob, w), ev.merit);
  }
}

TEST(Merit, GradientAgreesWithFiniteDifferences) {
  Rng rng(35);
  int checked = 0;
  while (checked < 50) {
    const auto prob = small_problem(rng, 1 + rng.index(4), 1 + rng.index(4));
    const auto dims = prob.dims();
    const W w{rng.vector(dims.k(), -1, 1), rng.vector(dims.l(), -1, 1), rng(0.2, 1.5)};
    const Vec f1 = f1_tilde(prob, w);
    bool far = true;
    for (Eigen::Index i = 0; i < dims.k(); ++i)
      far = far && std::hypot(w.xhat(i), f1(i)) >= 1e-3;
    if (!far)
      continue;
    const Mat fd = fd_jacobian<double>(
        [&](const Vec &v) { return Vec::Constant(1, merit(prob, W::unpack(v, dims))); }, w.pack());
    EXPECT_LE(inf_norm(Vec(fd.row(0).transpose() - grad_merit(prob, w))), 1e-5);
    ++checked;
  }
}

TEST(Merit, ZeroAtSolution) {
  const auto inst = generate_instance(3, 2, GenCase::General, 1);
  const auto prob = inst.problem.to_problem();
  const auto w = W::from_solution(inst.solution->point());
  EXPECT_LE(merit(prob, w), 1e-20);
  EXPECT_LE(inf_norm(grad_merit(prob, w)), 1e-8);
}

TEST(Merit, PublishedPointIsNearlyStationary) {
  EXPECT_LE(inf_norm(grad_merit(reconstructed(), paper_augmented_solution())), 1e-2);
}

TEST(IndexSets, Examples) {
  auto s = index_sets(vec({0, 1, 0}), vec({2, 0, 0}), 1e-6);
  EXPECT_EQ(s.comp, (std::vector<Eigen::Index>{0, 1, 2}));
  EXPECT_TRUE(s.res.empty());

  s = index_sets(vec({1, 0}), vec({1, 0}), 1e-6);
  EXPECT_EQ(s.pos, (std::vector<Eigen::Index>{0}));
  EXPECT_TRUE(s.neg.empty());

  s = index_sets(vec({-1}), vec({-1}), 1e-6);
  EXPECT_EQ(s.neg, (std::vector<Eigen::Index>{0}));
  EXPECT_TRUE(s.pos.empty());
}

TEST(IndexSets, PartitionInvariants) {
  Rng rng(36);
  for (int rep = 0; rep < 500; ++rep) {
    const Eigen::Index k = 1 + rng.index(8);
    Vec a = rng.vector(k, -1, 1), b = rng.vector(k, -1, 1);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (rng(0, 1) < 0.3)
        a(i) = 0.0;
      if (rng(0, 1) < 0.3)
        b(i) = 0.0;
    }
    const auto s = index_sets(a, b, 1e-6);
    std::vector<int> seen(static_cast<std::size_t>(k), 0);
    for (auto i : s.comp)
      seen[static_cast<std::size_t>(i)] += 1;
    for (auto i : s.res)
      seen[static_cast<std::size_t>(i)] += 10;
    for (auto i : s.pos)
      seen[static_cast<std::size_t>(i)] += 100;
    for (auto i : s.neg)
      seen[static_cast<std::size_t>(i)] += 1000;
    for (int v : seen)
      EXPECT_TRUE(v == 1 || v == 110 || v == 1010) << v;
  }
}

TEST(S0Check, Examples) {
  EXPECT_TRUE(s0_check<double>(Mat::Identity(3, 3)));
  EXPECT_FALSE(s0_check<double>(Mat::Constant(1, 1, -1.0)));
  Mat m(2, 2);
  m << 0, -1, -1, 0;
  EXPECT_FALSE(s0_check(m));
}

TEST(S0Check, AgreesWithVertexEnumeration) {
  Rng rng(37);
  int yes = 0, no = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const Eigen::Index n = 1 + rng.index(4);
    const Mat m = rng.matrix(n, n, -1, 1).array() - rng(0, 0.8);
    const bool expect = s0_by_vertices(m);
    EXPECT_EQ(s0_check(m), expect) << m;
    (expect ? yes : no)++;
  }
  EXPECT_GT(yes, 50);
  EXPECT_GT(no, 50);
}

TEST(S0Check, RejectsLargeMatrices) {
  try {
    s0_check<double>(Mat::Identity(21, 21));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
  EXPECT_TRUE(s0_check<double>(Mat::Identity(20, 20)));
}

TEST(Stationarity, Examples) {
  const auto prob = reconstructed();
  EXPECT_TRUE(stationarity_check(prob, converged_reconstructed(), 1e-6));
  EXPECT_TRUE(stationarity_check(prob, paper_augmented_solution(), 1e-2));
  EXPECT_FALSE(stationarity_check(prob, W{vec({1, 1, 1}), vec({0.5, 0.5}), 1.0}, 1e-6));
}

TEST(Regularity, ConvergedExamplePointIsRegular) {
  const auto prob = reconstructed();
  const auto v = fb_regularity_check(prob, converged_reconstructed(), 1e-6, 1e-9);
  EXPECT_EQ(v.kind, RegularityKind::Regular);
  EXPECT_TRUE(v.sets.pos.empty());
  EXPECT_TRUE(v.sets.neg.empty());
  ASSERT_TRUE(v.x_block_schur);
  EXPECT_EQ(v.x_block_schur->rows(), 3);
}

TEST(Regularity, SingularAGivesWitness) {
  Mat T = Mat::Identity(5, 5);
  T(0, 0) = 0.0;
  T(0, 3) = 1.0;
  T(3, 0) = 1.0;
  const LcpProblem<double> prob(EsocDims(3, 2), T, Vec::Zero(5), false);
  const auto v = fb_regularity_check(prob, W{Vec::Ones(3), vec({1, 0}), 1.0}, 1e-6, 1e-9);
  EXPECT_EQ(v.kind, RegularityKind::IrregularWitness);
  ASSERT_TRUE(v.witness);
  EXPECT_LE(inf_norm(Vec(prob.A() * *v.witness)), 1e-12);
  EXPECT_NEAR(v.witness->norm(), 1.0, 1e-12);
}

TEST(Regularity, NonSolutionPointIsIndeterminate) {
  const auto prob = reconstructed();
  const auto v = fb_regularity_check(prob, W{vec({1, -1, 0.5}), vec({0.3, -0.2}), 0.7}, 1e-6, 1e-9);
  EXPECT_EQ(v.kind, RegularityKind::Indeterminate);
  ASSERT_TRUE(v.free_block_schur);
  EXPECT_EQ(v.free_block_schur->rows(), static_cast<Eigen::Index>(v.sets.res.size()));
  EXPECT_TRUE(v.s0_advisory);
}

TEST(Certify, Examples) {
  const auto prob = reconstructed();
  const auto w = converged_reconstructed();
  EXPECT_TRUE(certify_solution(prob, w, 1e-6, 1e-6));
  const W bumped{w.xhat.array() + 1e-2, w.u.array() + 1e-2, w.t + 1e-2};
  EXPECT_FALSE(certify_solution(prob, bumped, 1e-6, 1e-6));

  const auto inst = generate_instance(3, 2, GenCase::General, 42);
  EXPECT_TRUE(certify_solution(inst.problem.to_problem(), W::from_solution(inst.solution->point()), 1e-6, 1e-6));
}
