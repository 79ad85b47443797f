#pragma once

#include <string_view>
#include <vector>

#include "ftvn/eigh.h"
#include "ftvn/point.h"
#include "ftvn/random.h"
#include "ftvn/system.h"

namespace ftvn {

// Parses `sorted:<n> | sym:<n> | norm:<d> | soc:<n> | product(<spec>,<spec>)`.
// soc:n becomes product(sorted:1,norm:n), i.e. (t, x) -> (t, |x|).
System build_system(std::string_view spec);

// The reduced system (W, W, mu): sorted:n for Sorted and Symmetric, norm:1 for
// Norm, componentwise for products.
System reduced_system(const System& sys);

SpecVector mu_of(const System& sys, const SpecVector& w);

// q in ran(lambda) up to tol: nonincreasing, nonnegative norm, or blockwise.
bool in_range(const System& sys, const SpecVector& q, double tol);

// Dual cone of the nonincreasing cone: partial sums >= -tol for k < n and a
// total within tol of zero. Sorted and Symmetric only.
bool in_dual_of_range(const System& sys, const SpecVector& z, double tol);

// Distinct elements of the mu-orbit of w (permutations, sign flips, or the
// product of both). Throws CapabilityError past 40320 vertices.
std::vector<SpecVector> orbit_vertices(const System& sys, const SpecVector& w);

// Gaussian point in V (independent N(0,1) flat coordinates).
Point random_point(const System& sys, Stream& rng);

// A random point of the orbit [x]: random permutation, random orthogonal
// conjugation, or random direction of the same norm, blockwise for products.
Point sample_orbit(const System& sys, const Point& x, Stream& rng);

// A point with lambda equal to q (q in ran lambda): q itself, diag(q), q_1 e_1.
Point lift(const System& sys, const SpecVector& q);

}  // namespace ftvn
