#pragma once

#include <vector>

#include "ftvn/point.h"
#include "ftvn/system.h"

namespace ftvn {

struct MajorizationVerdict {
  bool holds = false;
  // Most negative partial-sum slack, or minus the total mismatch.
  double worst_slack = 0.0;
};

// u in conv{Pv : P permutation}, by partial sums of the decreasing
// rearrangements: S_k(u) <= S_k(v) + tol for k < n and |sum u - sum v| <= tol.
MajorizationVerdict vec_majorized(const SpecVector& u, const SpecVector& v, double tol);

// Majorization in W for the reduced system of sys: partial sums for sorted and
// sym blocks, |u| <= |v| for norm blocks, and every block for products.
MajorizationVerdict reduced_majorized(const System& sys, const SpecVector& u,
                                      const SpecVector& v, double tol);

// x in conv[y], decided through lambda.
MajorizationVerdict majorized(const System& sys, const Point& x, const Point& y, double tol);

// <lambda c, sum lambda(x_i)> - <lambda c, lambda(sum x_i)>, for 2 <= k <= 8.
double lidskii_slack(const System& sys, const std::vector<Point>& xs, const Point& c);

// lambda(sum x_i) majorized by sum lambda(x_i).
MajorizationVerdict lidskii_majorization(const System& sys, const std::vector<Point>& xs,
                                         double tol);

}  // namespace ftvn
