#include "ftvn/convex.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ftvn/core.h"
#include "ftvn/error.h"
#include "ftvn/oracle.h"
#include "ftvn/random.h"
#include "ftvn/systems.h"
#include "helpers.h"

namespace ftvn {
namespace {

using testing::diag;
constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(SpectralFn, Evaluation) {
  const System s3 = build_system("sorted:3");
  EXPECT_EQ(eval_w(s3, SpectralFn::Quadratic(), {1, 2, 2}), 4.5);
  EXPECT_EQ(eval_w(s3, SpectralFn::Linear({1, 0, -1}), {3, 2, 1}), 2.0);
  EXPECT_EQ(eval_w(s3, SpectralFn::MaxComponent(), {3, 2, 1}), 3.0);
  EXPECT_EQ(eval_w(s3, SpectralFn::SumKLargest(2), {1, 3, 2}), 5.0);
  EXPECT_EQ(eval_w(s3, SpectralFn::MinComponent(), {1, 3, 2}), 1.0);
  const SpectralFn ind = SpectralFn::IndicatorOf(make_hull(s3, {{2, 1, 0}}));
  EXPECT_EQ(eval_w(s3, ind, {1, 1, 1}), 0.0);
  EXPECT_EQ(eval_w(s3, ind, {3, 0, 0}), kInf);
  EXPECT_EQ(eval_w(s3, SpectralFn::SupportOf(make_hull(s3, {{2, 1, 0}})), {0, 1, 1}), 3.0);
  EXPECT_THROW(eval_w(s3, SpectralFn::SumKLargest(4), {1, 2, 3}), DomainError);
  EXPECT_EQ(eval_v(build_system("sym:2"), SpectralFn::MaxComponent(), diag({-1, 4})), 4.0);
}

TEST(SpectralFn, SpectralityFlags) {
  const System s3 = build_system("sorted:3");
  EXPECT_TRUE(is_spectral(s3, SpectralFn::Linear({1, 1, 1})));
  EXPECT_FALSE(is_spectral(s3, SpectralFn::Linear({1, 0, 0})));
  EXPECT_TRUE(is_spectral(s3, SpectralFn::MaxComponent()));
  EXPECT_FALSE(is_spectral(build_system("norm:3"), SpectralFn::MaxComponent()));
  EXPECT_TRUE(is_spectral(build_system("norm:3"), SpectralFn::Quadratic()));
  EXPECT_TRUE(is_spectral(build_system("soc:3"), SpectralFn::Linear({2, 0})));
  EXPECT_FALSE(is_spectral(build_system("soc:3"), SpectralFn::Linear({2, 1})));
  EXPECT_TRUE(is_convex(SpectralFn::SumKLargest(2)));
  EXPECT_FALSE(is_convex(SpectralFn::MinComponent()));
}

TEST(Conjugate, QuadraticWholeSpace) {
  const System s2 = build_system("sym:2");
  const ConjugateResult r = conjugate(s2, SpectralFn::Quadratic(), Domain::All(), diag({3, 4}), 1e-10);
  EXPECT_DOUBLE_EQ(r.value, 12.5);
  ASSERT_TRUE(r.maximizer);
  EXPECT_LE(testing::max_diff(r.maximizer->coords, diag({3, 4}).coords), 1e-12);
  EXPECT_TRUE(r.exact);
  const auto g = oracle::grid_conjugate([](const SpecVector& u) { return 0.5 * u.values.squaredNorm(); },
                                        {-10, -10}, {10, 10}, 0.01, {4, 3});
  EXPECT_NEAR(g.value, r.value, 1e-6);
}

TEST(Conjugate, MaxComponentWholeSpace) {
  const System s2 = build_system("sym:2");
  EXPECT_EQ(conjugate(s2, SpectralFn::MaxComponent(), Domain::All(), diag({1, 0}), 1e-10).value, 0.0);
  EXPECT_EQ(conjugate(s2, SpectralFn::MaxComponent(), Domain::All(), diag({2, 0}), 1e-10).value, kInf);
  EXPECT_EQ(conjugate(s2, SpectralFn::MaxComponent(), Domain::All(), diag({0.5, 0.5}), 1e-10).value, 0.0);
  EXPECT_EQ(conjugate(s2, SpectralFn::MaxComponent(), Domain::All(), diag({1.5, -0.5}), 1e-10).value, kInf);
}

TEST(Conjugate, SumKAndLinear) {
  const System s3 = build_system("sorted:3");
  EXPECT_EQ(conjugate(s3, SpectralFn::SumKLargest(2), Domain::All(), Point{1, 0.5, 0.5}, 1e-10).value, 0.0);
  EXPECT_EQ(conjugate(s3, SpectralFn::SumKLargest(2), Domain::All(), Point{1.5, 0.5, 0}, 1e-10).value, kInf);
  EXPECT_EQ(conjugate(s3, SpectralFn::Linear({1, 1, 1}), Domain::All(), Point{1, 1, 1}, 1e-10).value, 0.0);
  EXPECT_EQ(conjugate(s3, SpectralFn::Linear({1, 1, 1}), Domain::All(), Point{2, 1, 0}, 1e-10).value, kInf);
  // Non-spectral linear: sup over the range cone.
  EXPECT_EQ(conjugate(s3, SpectralFn::Linear({1, 0, -1}), Domain::All(), Point{0, 0, 0}, 1e-10).value, 0.0);
  EXPECT_EQ(conjugate(s3, SpectralFn::Linear({-1, 0, 1}), Domain::All(), Point{0, 0, 0}, 1e-10).value, kInf);
}

TEST(Conjugate, ZeroOverOrbitRecoversOrbitSupport) {
  for (const char* d : {"sorted:4", "sym:3", "norm:3", "soc:3"}) {
    const System sys = build_system(d);
    for (int i = 0; i < 50; ++i) {
      Stream rng(61, static_cast<std::uint64_t>(i));
      const Point z = random_point(sys, rng), u = random_point(sys, rng);
      const SpectralSet orbit = make_orbit_union(sys, {lambda_of(sys, u)});
      const ConjugateResult r =
          conjugate(sys, SpectralFn::Zero(sys.dim_w()), Domain::Of(orbit), z, 1e-10);
      EXPECT_NEAR(r.value, orbit_support(sys, z, u).value, 1e-10) << d;
      ASSERT_TRUE(r.maximizer);
      EXPECT_NEAR(inner_v(sys, z, *r.maximizer), r.value, 1e-10) << d;
    }
  }
}

TEST(Conjugate, QuadraticOverPermutahedron) {
  const System s3 = build_system("sorted:3");
  const SpectralSet q = make_hull(s3, {{2, 1, 0}});
  const ConjugateResult r = conjugate(s3, SpectralFn::Quadratic(), Domain::Of(q), Point{1, 1, 1}, 1e-10);
  EXPECT_NEAR(r.value, 1.5, 1e-14);
  const CrossCheckReport c =
      conjugate_cross_check(s3, SpectralFn::Quadratic(), Domain::Of(q), Point{1, 1, 1}, 1000, 1, 1e-8);
  EXPECT_TRUE(c.pass(1e-8));
  // Projection that leaves the hull.
  const ConjugateResult far = conjugate(s3, SpectralFn::Quadratic(), Domain::Of(q), Point{5, 0, 0}, 1e-10);
  EXPECT_NEAR(far.value, 10.0 - 0.5 * 4.5, 1e-12);
  EXPECT_LE(max_abs_diff(*far.w_maximizer, {2, 0.5, 0.5}), 1e-14);
}

TEST(Conjugate, AgreesWithVertexAndGridOracles) {
  const System s3 = build_system("sorted:3");
  const SpectralSet q = make_hull(s3, {{2, 1, -1}});
  const auto verts = orbit_vertices(s3, {2, 1, -1});
  for (int i = 0; i < 20; ++i) {
    Stream rng(62, static_cast<std::uint64_t>(i));
    const Point z = random_point(s3, rng);
    const SpecVector lz = lambda_of(s3, z);
    double best = -kInf;
    for (const auto& v : verts) best = std::max(best, inner_w(lz, v));
    EXPECT_NEAR(conjugate(s3, SpectralFn::Zero(3), Domain::Of(q), z, 1e-10).value, best, 1e-12);
    // The hull lies in the plane sum(u) = 2.
    for (const SpectralFn& phi : {SpectralFn::MaxComponent(), SpectralFn::SumKLargest(2)}) {
      oracle::GridOptions opt;
      opt.fixed_sum = 2.0;
      opt.probe_unbounded = false;
      opt.lipschitz = lz.values.norm() + std::sqrt(3.0);
      opt.feasible = [&](const SpecVector& u) { return member_w(s3, q, u, 1e-9); };
      const auto g = oracle::grid_conjugate([&](const SpecVector& u) { return eval_w(s3, phi, u); },
                                            {-1, -1, -1}, {2, 2, 2}, 0.01, lz, opt);
      const double value = conjugate(s3, phi, Domain::Of(q), z, 1e-10).value;
      EXPECT_GE(value, best - eval_w(s3, phi, {2, 1, -1}) - 1e-9) << phi.name;
      EXPECT_GE(value, g.value - 1e-9) << phi.name;
      EXPECT_LE(value, g.value + g.slack) << phi.name;
    }
    const auto g = oracle::grid_conjugate(
        [&](const SpecVector& u) {
          return member_w(s3, q, u, 1e-9) ? 0.5 * u.values.squaredNorm() : kInf;
        },
        {-1, -1, -1}, {2, 2, 2}, 0.02, lz, {.probe_unbounded = false});
    const double exact = conjugate(s3, SpectralFn::Quadratic(), Domain::Of(q), z, 1e-10).value;
    EXPECT_LE(g.value, exact + 1e-9);
    EXPECT_GE(g.value, exact - 0.2);
  }
}

TEST(Conjugate, SpectralHullDomainGivesSameValue) {
  const System m3 = build_system("sym:3");
  const SpectralSet q = make_hull(m3, {{2, 0, -1}});
  for (int i = 0; i < 20; ++i) {
    Stream rng(63, static_cast<std::uint64_t>(i));
    const Point z = random_point(m3, rng);
    for (const SpectralFn& phi : {SpectralFn::MaxComponent(), SpectralFn::SumKLargest(2),
                                  SpectralFn::Quadratic()}) {
      const double a = conjugate(m3, phi, Domain::Of(q), z, 1e-10).value;
      const double b = conjugate(m3, phi, Domain::Of(q), z, 1e-10, {.over_spectral_hull = true}).value;
      EXPECT_NEAR(a, b, 1e-9) << phi.name;
    }
  }
}

TEST(Conjugate, NonSpectralDomainRejected) {
  const System n2 = build_system("norm:2");
  EXPECT_THROW(conjugate(n2, SpectralFn::Quadratic(), Domain::Of(make_interval({0, 1, true, false})),
                         Point{1, 0}, 1e-10),
               DomainError);
  const ConjugateResult r = conjugate(n2, SpectralFn::Quadratic(),
                                      Domain::Of(make_interval({-1, 1, true, true})), Point{3, 4}, 1e-10);
  EXPECT_DOUBLE_EQ(r.value, 4.5);
}

TEST(Conjugate, IndicatorOfHull) {
  const System m3 = build_system("sym:3");
  const SpectralFn phi = SpectralFn::IndicatorOf(make_hull(m3, {{2, 1, 0}}));
  const CrossCheckReport c = conjugate_cross_check(m3, phi, Domain::All(), diag({1, 3, -1}), 1000, 5, 1e-8);
  EXPECT_DOUBLE_EQ(c.reduced, 7.0);
  EXPECT_LE(c.excess, 1e-8);
  EXPECT_TRUE(c.pass(1e-8));
}

TEST(Conjugate, FenchelInequality) {
  const System m2 = build_system("sym:2");
  for (const SpectralFn& phi : {SpectralFn::Quadratic(), SpectralFn::MaxComponent(),
                                SpectralFn::SumKLargest(1)}) {
    for (int i = 0; i < 200; ++i) {
      Stream rng(64, static_cast<std::uint64_t>(i));
      const Point x = random_point(m2, rng), y = random_point(m2, rng);
      const double c = conjugate(m2, phi, Domain::All(), y, 1e-10).value;
      EXPECT_GE(eval_v(m2, phi, x) + c, inner_v(m2, x, y) - 1e-10);
    }
  }
}

TEST(Subdiff, MaxEigenvalueCases) {
  const System m2 = build_system("sym:2");
  const SpectralFn phi = SpectralFn::MaxComponent();
  const SubdiffReport yes = subdiff_check(m2, phi, Domain::All(), diag({2, 0}), diag({1, 0}), 1e-8);
  EXPECT_TRUE(yes.holds());
  const SubdiffReport no = subdiff_check(m2, phi, Domain::All(), diag({2, 0}), diag({0, 1}), 1e-8);
  EXPECT_TRUE(no.fenchel_ok);
  EXPECT_FALSE(no.commutes);
  EXPECT_FALSE(no.holds());
  // The audit finds the violation along diag(0, t).
  const SubdiffAudit bad = subdiff_audit(m2, phi, Domain::All(), diag({2, 0}), diag({0, 1}), 2000, 1);
  EXPECT_LT(bad.worst_slack, -1e-3);
  EXPECT_LT(eval_v(m2, phi, diag({2, 3})) - 2.0 - 3.0, 0.0);
  const SubdiffAudit good = subdiff_audit(m2, phi, Domain::All(), diag({2, 0}), diag({1, 0}), 2000, 1);
  EXPECT_GE(good.worst_slack, -1e-10);
  const System s3 = build_system("sorted:3");
  EXPECT_TRUE(subdiff_check(s3, SpectralFn::Zero(3), Domain::All(), Point{1, -2, 5}, Point{0, 0, 0}, 1e-8)
                  .holds());
}

TEST(Subdiff, Preconditions) {
  const System s3 = build_system("sorted:3");
  const SpectralSet q = make_hull(s3, {{2, 1, 0}});
  EXPECT_THROW(subdiff_check(s3, SpectralFn::Quadratic(), Domain::Of(q), Point{3, 0, 0}, Point{0, 0, 0}, 1e-8),
               PreconditionError);
  EXPECT_THROW(subdiff_check(s3, SpectralFn::IndicatorOf(q), Domain::All(), Point{3, 0, 0},
                             Point{0, 0, 0}, 1e-8),
               PreconditionError);
}

TEST(SubdiffConstruct, Examples) {
  const System m2 = build_system("sym:2");
  const Point y = subdiff_construct(m2, SpectralFn::MaxComponent(), diag({2, 0}), {1, 0}, 1e-8);
  EXPECT_LE(testing::max_diff(y.coords, diag({1, 0}).coords), 1e-14);

  const Point xbar = testing::sym({{1, 2}, {2, -3}});
  const Point g = subdiff_construct(m2, SpectralFn::Quadratic(), xbar, lambda_of(m2, xbar), 1e-8);
  EXPECT_LE(testing::max_diff(g.coords, xbar.coords), 1e-12);

  const System s3 = build_system("sorted:3");
  const Point k = subdiff_construct(s3, SpectralFn::SumKLargest(2), Point{3, 2, 1}, {1, 1, 0}, 1e-8);
  EXPECT_EQ(k.coords, Point({1, 1, 0}).coords);
  auto f = [&](const Point& p) { return eval_v(s3, SpectralFn::SumKLargest(2), p); };
  EXPECT_LE(testing::max_diff(oracle::finite_diff_grad(s3, f, Point{3, 2, 1}, 1e-4).coords, k.coords), 1e-9);

  EXPECT_THROW(subdiff_construct(m2, SpectralFn::MaxComponent(), diag({2, 0}), {0, 1}, 1e-8),
               PreconditionError);
  EXPECT_THROW(subdiff_construct(m2, SpectralFn::MaxComponent(), diag({2, 0}), {0.5, 0.5}, 1e-8),
               PreconditionError);
}

TEST(SubdiffConstruct, MatchesFiniteDifferences) {
  const System m3 = build_system("sym:3");
  for (int i = 0; i < 20; ++i) {
    Stream rng(65, static_cast<std::uint64_t>(i));
    const Point x = random_point(m3, rng);
    const SpecVector lx = lambda_of(m3, x);
    if (lx[0] - lx[1] < 0.05 || lx[1] - lx[2] < 0.05) continue;
    const SpectralFn k2 = SpectralFn::SumKLargest(2);
    const Point y = subdiff_construct(m3, k2, x, {1, 1, 0}, 1e-8);
    auto f = [&](const Point& p) { return eval_v(m3, k2, p); };
    EXPECT_LE(testing::max_diff(oracle::finite_diff_grad(m3, f, x, 1e-4).coords, y.coords), 1e-5);
    const Point q = subdiff_construct(m3, SpectralFn::Quadratic(), x, lx, 1e-8);
    auto h = [&](const Point& p) { return eval_v(m3, SpectralFn::Quadratic(), p); };
    EXPECT_LE(testing::max_diff(oracle::finite_diff_grad(m3, h, x, 1e-4).coords, q.coords), 1e-5);
  }
}

TEST(NormalCone, Examples) {
  const System m2 = build_system("sym:2");
  const SpectralSet ball = make_sublevel(euclidean_level(), 1);
  const NormalConeReport a = normal_cone_commutation(m2, ball, diag({1, 0}), diag({3, 0}), 1e-8);
  EXPECT_TRUE(a.normal);
  EXPECT_TRUE(a.commutes);
  EXPECT_EQ(a.commutation_slack, 0.0);
  const NormalConeReport z = normal_cone_commutation(m2, ball, diag({1, 0}), diag({0, 0}), 1e-8);
  EXPECT_TRUE(z.normal);
  EXPECT_TRUE(z.commutes);
  const NormalConeReport n = normal_cone_commutation(m2, ball, diag({1, 0}), diag({0, 1}), 1e-8);
  EXPECT_FALSE(n.normal);
  EXPECT_DOUBLE_EQ(n.inner, 0.0);
  EXPECT_DOUBLE_EQ(n.support, 1.0);
  EXPECT_THROW(normal_cone_commutation(m2, ball, diag({2, 0}), diag({1, 0}), 1e-8), PreconditionError);
  EXPECT_THROW(normal_cone_commutation(m2, make_orbit_union(m2, {{1, 0}}), diag({1, 0}), diag({1, 0}), 1e-8),
               DomainError);
}

TEST(Convexity, Probe) {
  const System m3 = build_system("sym:3");
  const ConvexityReport r = convexity_probe(m3, SpectralFn::MaxComponent(), 2000, 1);
  EXPECT_LE(r.max_violation_v, 1e-8);
  EXPECT_LE(r.max_violation_w, 1e-12);
  const ConvexityReport t = convexity_probe(m3, SpectralFn::Linear({1, 1, 1}), 2000, 1);
  EXPECT_LE(t.max_violation_v, 1e-12);
  const ConvexityReport m = convexity_probe(m3, SpectralFn::MinComponent(), 2000, 1);
  EXPECT_GT(m.max_violation_v, 0.0);
  const System m2 = build_system("sym:2");
  EXPECT_DOUBLE_EQ(convexity_violation(m2, SpectralFn::MinComponent(), diag({1, 0}), diag({0, 1}), 0.5), 0.5);
}

}  // namespace
}  // namespace ftvn
