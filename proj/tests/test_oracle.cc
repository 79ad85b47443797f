#include "ftvn/oracle.h"

#include <cmath>

#include <gtest/gtest.h>

#include "ftvn/convex.h"
#include "ftvn/core.h"
#include "ftvn/error.h"
#include "ftvn/random.h"
#include "ftvn/simplex.h"
#include "ftvn/systems.h"
#include "helpers.h"

namespace ftvn {
namespace {

TEST(PermsSupport, Examples) {
  EXPECT_EQ(oracle::perms_support({1, 2, 3}, {1, 0, -1}), 2.0);
  EXPECT_EQ(oracle::perms_support({1, -2, 5}, {3, 3, 3}), 12.0);
  EXPECT_EQ(oracle::perms_support({0, 0, 0, 0}, {1, 2, 3, 4}), 0.0);
  EXPECT_THROW(oracle::perms_support(SpecVector(Eigen::VectorXd::Ones(9)),
                                     SpecVector(Eigen::VectorXd::Ones(9))),
               CapabilityError);
}

TEST(PermsSupport, RearrangementIdentity) {
  for (int n = 1; n <= 7; ++n) {
    for (int i = 0; i < 20; ++i) {
      Stream rng(41, static_cast<std::uint64_t>(n * 100 + i));
      Eigen::VectorXd c = rng.normal_vector(n), u = rng.normal_vector(n);
      const double brute = oracle::perms_support(SpecVector(c), SpecVector(u));
      std::sort(c.data(), c.data() + n);
      std::sort(u.data(), u.data() + n);
      EXPECT_NEAR(brute, c.dot(u), 1e-12);
    }
  }
}

TEST(ConvMemberLp, Examples) {
  const std::vector<SpecVector> pts{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
  const auto in = oracle::conv_member_lp(pts, {1, 1, 0}, 1e-9);
  ASSERT_TRUE(in.feasible);
  EXPECT_NEAR(in.coefficients.sum(), 1.0, 1e-10);
  EXPECT_GE(in.coefficients.minCoeff(), -1e-10);
  EXPECT_LE(in.max_residual, 1e-8);
  EXPECT_NEAR(in.coefficients(0), 0.5, 1e-8);
  EXPECT_NEAR(in.coefficients(1), 0.5, 1e-8);
  EXPECT_FALSE(oracle::conv_member_lp(pts, {3, 0, 0}, 1e-9).feasible);
  const auto one = oracle::conv_member_lp({{1, -2}}, {1, -2}, 1e-12);
  ASSERT_TRUE(one.feasible);
  EXPECT_NEAR(one.coefficients(0), 1.0, 1e-12);
}

TEST(ConvMemberLp, SizeLimits) {
  std::vector<SpecVector> many(5041, SpecVector{1.0});
  EXPECT_THROW(oracle::conv_member_lp(many, {1.0}, 1e-9), CapabilityError);
  EXPECT_THROW(oracle::conv_member_lp({SpecVector(Eigen::VectorXd::Zero(17))},
                                      SpecVector(Eigen::VectorXd::Zero(17)), 1e-9),
               CapabilityError);
}

TEST(Simplex, SmallPrograms) {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> (1.6, 1.2), value 2.8
  LinearProgram lp;
  lp.num_vars = 2;
  lp.free = {false, false};
  lp.objective = Eigen::Vector2d(1, 1);
  lp.add(Eigen::Vector2d(1, 2), Relation::kLessEq, 4);
  lp.add(Eigen::Vector2d(3, 1), Relation::kLessEq, 6);
  const LPSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LPStatus::kOptimal);
  EXPECT_NEAR(s.value, 2.8, 1e-12);
  EXPECT_NEAR(s.x(0), 1.6, 1e-12);

  LinearProgram unb;
  unb.num_vars = 1;
  unb.free = {true};
  unb.objective = Eigen::VectorXd::Ones(1);
  unb.add(Eigen::VectorXd::Ones(1), Relation::kGreaterEq, -3);
  EXPECT_EQ(solve_lp(unb).status, LPStatus::kUnbounded);

  LinearProgram inf;
  inf.num_vars = 1;
  inf.free = {false};
  inf.objective = Eigen::VectorXd::Ones(1);
  inf.add(Eigen::VectorXd::Ones(1), Relation::kLessEq, -1);
  EXPECT_EQ(solve_lp(inf).status, LPStatus::kInfeasible);

  // Free variable with a negative optimum and an equality row.
  LinearProgram fr;
  fr.num_vars = 2;
  fr.free = {true, false};
  fr.objective = Eigen::Vector2d(-1, -1);
  fr.add(Eigen::Vector2d(1, 1), Relation::kEqual, -2);
  fr.add(Eigen::Vector2d(0, 1), Relation::kLessEq, 5);
  const LPSolution f = solve_lp(fr);
  ASSERT_EQ(f.status, LPStatus::kOptimal);
  EXPECT_NEAR(f.value, 2.0, 1e-12);
}

TEST(Simplex, DegenerateDoesNotCycle) {
  // Beale's cycling example.
  LinearProgram lp;
  lp.num_vars = 4;
  lp.free.assign(4, false);
  lp.objective = Eigen::Vector4d(0.75, -150, 0.02, -6);
  lp.add(Eigen::Vector4d(0.25, -60, -0.04, 9), Relation::kLessEq, 0);
  lp.add(Eigen::Vector4d(0.5, -90, -0.02, 3), Relation::kLessEq, 0);
  lp.add(Eigen::Vector4d(0, 0, 1, 0), Relation::kLessEq, 1);
  const LPSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LPStatus::kOptimal);
  EXPECT_NEAR(s.value, 0.05, 1e-12);
}

TEST(GridConjugate, Examples) {
  const System w2 = build_system("sorted:2");
  const SpecVector lo{-10, -10}, hi{10, 10};
  auto quad = [](const SpecVector& u) { return 0.5 * u.values.squaredNorm(); };
  const auto q = oracle::grid_conjugate(quad, lo, hi, 0.01, {3, 4});
  EXPECT_NEAR(q.value, 12.5, 1e-3);
  EXPECT_FALSE(q.unbounded_suspected);

  auto mx = [](const SpecVector& u) { return u.values.maxCoeff(); };
  const auto m = oracle::grid_conjugate(mx, {-5, -5}, {5, 5}, 0.01, {1, 0});
  EXPECT_NEAR(m.value, 0.0, 1e-2);
  EXPECT_FALSE(m.unbounded_suspected);
  const auto m2 = oracle::grid_conjugate(mx, {-5, -5}, {5, 5}, 0.01, {2, 0});
  EXPECT_TRUE(m2.unbounded_suspected);

  const SpecVector b{1, 2};
  auto lin = [&](const SpecVector& u) { return inner_w(b, u); };
  const auto l = oracle::grid_conjugate(lin, {-5, -5}, {5, 5}, 0.1, {1, 3});
  EXPECT_TRUE(l.unbounded_suspected);
  const auto l0 = oracle::grid_conjugate(lin, {-5, -5}, {5, 5}, 0.1, b);
  EXPECT_NEAR(l0.value, 0.0, 1e-12);
  EXPECT_FALSE(l0.unbounded_suspected);
  (void)w2;
}

TEST(GridConjugate, Budget) {
  auto f = [](const SpecVector&) { return 0.0; };
  EXPECT_THROW(oracle::grid_conjugate(f, {-1, -1, -1}, {1, 1, 1}, 1e-3, {0, 0, 0}), CapabilityError);
  EXPECT_THROW(oracle::grid_conjugate(f, {0, 0, 0, 0}, {1, 1, 1, 1}, 0.5, {0, 0, 0, 0}),
               CapabilityError);
}

TEST(RandomOrthogonal, Properties) {
  const Eigen::MatrixXd one = oracle::random_orthogonal(1, 5);
  EXPECT_EQ(std::abs(one(0, 0)), 1.0);
  const Eigen::MatrixXd a = oracle::random_orthogonal(3, 99), b = oracle::random_orthogonal(3, 99);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, oracle::random_orthogonal(3, 100));
  EXPECT_LE((a.transpose() * a - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
  const System s3 = build_system("sym:3");
  const Eigen::Vector3d q(4, -1, 2);
  const SpecVector l = lambda_of(s3, pack_upper(a * q.asDiagonal() * a.transpose()));
  EXPECT_LE(max_abs_diff(l, {4, 2, -1}), 1e-8);
  for (int n : {2, 7, 30}) {
    const Eigen::MatrixXd m = oracle::random_orthogonal(n, 3);
    EXPECT_LE((m.transpose() * m - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(FiniteDiffGrad, Examples) {
  const System s2 = build_system("sym:2");
  const Point x = testing::sym({{1, -2}, {-2, 0.5}});
  auto half_sq = [&](const Point& p) { return 0.5 * inner_v(s2, p, p); };
  EXPECT_LE(testing::max_diff(oracle::finite_diff_grad(s2, half_sq, x, 1e-4).coords, x.coords), 1e-8);

  auto lmax = [&](const Point& p) { return lambda_of(s2, p)[0]; };
  const Point g = oracle::finite_diff_grad(s2, lmax, testing::diag({2, 0}), 1e-4);
  EXPECT_LE(testing::max_diff(g.coords, testing::diag({1, 0}).coords), 1e-5);

  const Point b = testing::sym({{3, 1}, {1, -4}});
  auto lin = [&](const Point& p) { return inner_v(s2, b, p); };
  EXPECT_LE(testing::max_diff(oracle::finite_diff_grad(s2, lin, x, 1e-4).coords, b.coords), 1e-9);

  auto bad = [](const Point&) { return std::numeric_limits<double>::infinity(); };
  EXPECT_THROW(oracle::finite_diff_grad(s2, bad, x, 1e-4), DomainError);
}

}  // namespace
}  // namespace ftvn
