#include "ftvn/interval.h"

#include <limits>

#include <gtest/gtest.h>

#include "ftvn/spectral_sets.h"
#include "ftvn/systems.h"

namespace ftvn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval iv(double lo, double hi, bool lc, bool hc) { return {lo, hi, lc, hc}; }

TEST(Interval, Basics) {
  EXPECT_TRUE(Interval::Empty().empty());
  EXPECT_TRUE(iv(0, 0, true, false).empty());
  EXPECT_FALSE(Interval::Point(2).empty());
  EXPECT_TRUE(iv(-1, 0, false, true).contains(0));
  EXPECT_FALSE(iv(-1, 0, false, true).contains(-1));
  EXPECT_EQ(iv(-1, 0, false, true).closure(), iv(-1, 0, true, true));
  EXPECT_EQ(iv(-1, 0, false, true).interior(), iv(-1, 0, false, false));
  EXPECT_EQ(iv(0, 2, true, true).intersect(iv(1, 3, false, true)), iv(1, 2, false, true));
  EXPECT_TRUE(Interval::Real().is_closed());
  EXPECT_TRUE(Interval::Real().is_open());
  EXPECT_TRUE(Interval::Empty().is_closed());
  EXPECT_EQ(Interval::NonNegative().closure(), Interval::NonNegative());
  EXPECT_EQ(iv(-2, 1, true, false).abs(), iv(0, 2, true, true));
  EXPECT_EQ(iv(0, kInf, false, false).to_string(), "(0, inf)");
}

TEST(NormTopology, HalfOpenAtZeroHasClosedPreimage) {
  const Interval q = iv(-1, 0, false, true);
  EXPECT_FALSE(q.is_closed());
  const RadialSet e = norm_preimage(q);
  EXPECT_EQ(e.radii, Interval::Point(0));
  EXPECT_TRUE(e.is_closed());
}

TEST(NormTopology, HalfOpenUnitHasOpenPreimage) {
  const Interval q = iv(0, 1, true, false);
  EXPECT_FALSE(q.is_open());
  const RadialSet e = norm_preimage(q);
  EXPECT_TRUE(e.is_open());
  EXPECT_FALSE(e.is_closed());
}

TEST(NormTopology, ClosureDoesNotCommute) {
  const Interval q = iv(-1, 0, false, false);
  const RadialSet closure_of_preimage = norm_preimage(q).closure();
  const RadialSet preimage_of_closure = norm_preimage(q.closure());
  EXPECT_TRUE(closure_of_preimage.empty());
  EXPECT_EQ(preimage_of_closure.radii, Interval::Point(0));
  EXPECT_FALSE(closure_of_preimage == preimage_of_closure);
}

TEST(NormTopology, ConvexityDoesNotTransfer) {
  const Interval q = Interval::Point(1);
  const RadialSet e = norm_preimage(q);
  EXPECT_FALSE(e.is_convex());
  EXPECT_TRUE(norm_preimage(iv(-3, 2, true, true)).is_convex());
  EXPECT_FALSE(norm_preimage(iv(0, 2, false, true)).is_convex());
}

TEST(NormTopology, SymmetrizedSetsTransfer) {
  // A spectral Q (symmetric about 0) keeps closure and interior in step.
  for (const Interval& q : {iv(-1, 1, false, false), iv(-2, 2, true, true), iv(-1, 1, true, false)}) {
    const RadialSet e = norm_preimage(q);
    EXPECT_EQ(e.closure(), norm_preimage(q.closure()));
    EXPECT_EQ(e.interior(), norm_preimage(q.interior()));
  }
}

TEST(NormTopology, MembershipAndSpectralize) {
  const System n2 = build_system("norm:2");
  const SpectralSet q = make_interval(iv(-1, 0, false, true));
  EXPECT_FALSE(is_spectral(n2, q));
  EXPECT_TRUE(member(n2, q, Point{0, 0}, 0.0));
  EXPECT_FALSE(member(n2, q, Point{0.5, 0}, 0.0));

  const SpectralSet image = lambda_image(n2, q);
  ASSERT_TRUE(std::holds_alternative<IntervalSet>(image));
  EXPECT_EQ(std::get<IntervalSet>(image).iv, Interval::Point(0));

  const SpectralSet t = spectralize(n2, q);
  ASSERT_TRUE(std::holds_alternative<OrbitUnion>(t));
  ASSERT_EQ(std::get<OrbitUnion>(t).points.size(), 1u);
  EXPECT_EQ(std::get<OrbitUnion>(t).points[0][0], 0.0);
  EXPECT_TRUE(is_spectral(n2, t));

  const SpectralSet half = lambda_image(n2, make_interval(iv(0, 1, true, false)));
  EXPECT_EQ(std::get<IntervalSet>(half).iv, iv(0, 1, true, false));

  const SpectralSet none = spectralize(n2, make_interval(iv(-2, -1, true, true)));
  ASSERT_TRUE(std::holds_alternative<OrbitUnion>(none));
  EXPECT_TRUE(std::get<OrbitUnion>(none).points.empty());
  EXPECT_FALSE(member(n2, none, Point{0, 0}, 0.0));
}

}  // namespace
}  // namespace ftvn
