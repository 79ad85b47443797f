#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ftvn/interval.h"
#include "ftvn/point.h"
#include "ftvn/random.h"
#include "ftvn/system.h"

namespace ftvn {

// Scalar function on W used by sublevel sets {u : f(u) <= level}.
struct LevelFunction {
  std::string name;
  std::function<double(const SpecVector&)> eval;
  bool convex = false;
  // sup{<c,u> : f(u) <= level}, when known in closed form.
  std::function<double(const SpecVector& c, double level)> support;
};

LevelFunction max_abs_level();    // max |u_i|, spectral-norm ball
LevelFunction euclidean_level();  // |u|_2, Frobenius ball
LevelFunction sum_abs_level();    // sum |u_i|, nuclear-norm ball

// Finite union of mu-orbits, stored as canonical representatives.
struct OrbitUnion {
  std::vector<SpecVector> points;
};
// conv of the union of the mu-orbits of the generators.
struct MajorizationHull {
  std::vector<SpecVector> generators;
};
struct Sublevel {
  LevelFunction fn;
  double level = 0.0;
};
// A subset of W = R. With symmetrized = true the set is iv U -iv.
struct IntervalSet {
  Interval iv;
  bool symmetrized = false;
};

using SpectralSet = std::variant<OrbitUnion, MajorizationHull, Sublevel, IntervalSet>;

// Builders canonicalize through mu and drop duplicates.
SpectralSet make_orbit_union(const System& sys, const std::vector<SpecVector>& points);
SpectralSet make_hull(const System& sys, const std::vector<SpecVector>& generators);
SpectralSet make_sublevel(LevelFunction fn, double level);
SpectralSet make_interval(const Interval& iv);

std::string variant_name(const SpectralSet& q);

// Throws LayoutError unless every stored vector has dim_w entries, and
// DomainError for intervals outside one-dimensional W.
void check_set(const System& sys, const SpectralSet& q);

// Whether Q is a union of mu-orbits. Sublevel sets are spot-checked on
// random orbit elements (seeded), the rest is exact.
bool is_spectral(const System& sys, const SpectralSet& q);

// u in Q. Interval membership is exact; tol widens the other variants.
bool member_w(const System& sys, const SpectralSet& q, const SpecVector& u, double tol);
// x in lambda^{-1}(Q), i.e. lambda(x) in Q.
bool member(const System& sys, const SpectralSet& q, const Point& x, double tol);

// lambda(lambda^{-1}(Q)) = Q cap mu(Q). Sublevel throws CapabilityError.
SpectralSet lambda_image(const System& sys, const SpectralSet& q);
// [Q cap mu(Q)], which has the same preimage as Q.
SpectralSet spectralize(const System& sys, const SpectralSet& q);
// [S] for a finite S, as an orbit union.
SpectralSet spectral_hull_points(const System& sys, const std::vector<Point>& pts);

enum class CoreVerdict { kInCore, kRefuted, kInconclusive };
struct CoreResult {
  CoreVerdict verdict = CoreVerdict::kInconclusive;
  std::optional<Point> witness;  // orbit point outside S
  int probes_used = 0;
};
// Is x in core(S), the largest spectral subset of S? Exhaustive for sorted
// systems with n! <= 5040, sampling (refutation only) otherwise.
CoreResult core_member(const System& sys, const std::function<bool(const Point&)>& in_s,
                       const Point& x, int probes, std::uint64_t seed);

struct SupportValue {
  double value = 0.0;  // -inf for the empty set
  bool approximate = false;
  std::optional<SpecVector> argmax;
};
// sup{<c,x> : x in lambda^{-1}(Q)} = sup{<lambda c, u> : u in Q cap ran lambda}.
SupportValue support(const System& sys, const SpectralSet& q, const Point& c);
// Same with lambda(c) replaced by mu(w).
SupportValue support_w(const System& sys, const SpectralSet& q, const SpecVector& w);

// Interior of lambda^{-1}(Q) for a convex Sublevel set with a Slater point:
// f(lambda x) <= level - tol.
bool interior_member(const System& sys, const SpectralSet& q, const Point& x, double tol);

// A random element of lambda^{-1}(Q) (hulls, orbit unions, sublevel sets).
Point sample_member(const System& sys, const SpectralSet& q, Stream& rng);

struct MinkowskiReport {
  int trials = 0;
  double max_v_slack = 0.0;  // |<c, x1 + x2> - h(c)| at the aligned maximizers
  double max_w_slack = 0.0;  // brute-force orbit supports in W
  int forward_failures = 0;  // x1 + x2 outside lambda^{-1}(Q1 + Q2)
  SpectralSet sum;
  bool pass(double tol) const {
    return max_v_slack <= tol && max_w_slack <= tol && forward_failures == 0;
  }
};
// lambda^{-1}(Q1) + lambda^{-1}(Q2) = lambda^{-1}(Q1 + Q2) for single-orbit
// hulls, checked through support functions and forward membership.
MinkowskiReport minkowski_check(const System& sys, const SpectralSet& q1, const SpectralSet& q2,
                                int trials, std::uint64_t seed, double tol);

struct ExtremeVerdict {
  bool refuted = false;
  std::optional<Point> a, b;  // candidate = (a + b) / 2
  int probes_used = 0;
};
// Tries to write candidate as a midpoint of two distinct members of the
// single-orbit hull Q. Not refuted is a sound but incomplete positive signal.
ExtremeVerdict extreme_refute(const System& sys, const SpectralSet& q, const Point& candidate,
                              int probes, std::uint64_t seed);

// Exact answer for sorted systems with n <= 5: the candidate is a vertex of
// the permutahedron and not in the hull of the remaining vertices.
bool certify_extreme_lp(const System& sys, const SpectralSet& q, const Point& candidate);

struct TransferReport {
  int convex_trials = 0;
  int convex_failures = 0;
  double worst_convex_excess = 0.0;
  int probe_points = 0;
  int classification_disagreements = 0;
  bool pass() const { return convex_failures == 0 && classification_disagreements == 0; }
};
// Convexity of lambda^{-1}(Q) by sampled combinations and, for convex
// Sublevel sets, interior/boundary agreement between W and direct probing
// in V.
TransferReport transfer_suite(const System& sys, const SpectralSet& q, int combos, int probes,
                              std::uint64_t seed, double tol);

}  // namespace ftvn
