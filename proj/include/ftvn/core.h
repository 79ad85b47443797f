#pragma once

#include <functional>
#include <vector>

#include "ftvn/point.h"
#include "ftvn/random.h"
#include "ftvn/system.h"

namespace ftvn {

SpecVector lambda_of(const System& sys, const Point& x);

// <x,y> - <lambda(x),lambda(y)>, always <= 0 up to roundoff.
double commutation_gap(const System& sys, const Point& x, const Point& y);

// x and y commute iff |<x,y> - <lambda x, lambda y>| <= tol.
bool commutes(const System& sys, const Point& x, const Point& y, double tol);

// The three equivalent characterizations, each decided on its own.
//   (i)   |<x,y> - <lambda x, lambda y>| <= tol
//   (ii)  lambda(x+y) = lambda(x) + lambda(y), accepted when
//         |a - b| (|a| + |b|) / 2 <= tol with a = lambda(x+y), b = lambda x + lambda y
//   (iii) |x-y| = |lambda x - lambda y|, accepted when the squared norms differ by <= 2 tol
struct CommutationVerdicts {
  bool by_inner = false;
  bool by_additivity = false;
  bool by_isometry = false;
  double slack = 0.0;  // <lambda x, lambda y> - <x,y>
};
CommutationVerdicts commutation_verdicts(const System& sys, const Point& x, const Point& y,
                                         double tol);

// Range tolerance used to validate q before aligning.
double range_tol(const SpecVector& q);

// A point x with lambda(x) = q and <c,x> = <lambda c, q>. Sorted places the
// k-th largest q at the k-th largest c (ties by index), Symmetric returns
// U diag(q) U^T from the eigenbasis of c, Norm scales c (q_1 e_1 when c = 0).
// Throws DomainError when q is not in ran lambda.
Point align(const System& sys, const Point& c, const SpecVector& q);

struct OrbitSupport {
  double value = 0.0;
  Point maximizer;
};
// max{<c,x> : x in [u]} = <lambda c, lambda u>, with align's maximizer.
OrbitSupport orbit_support(const System& sys, const Point& c, const Point& u);

// Anything that looks like an FTvN system; used to feed test doubles to the
// axiom harness.
struct AxiomModel {
  std::function<Point(Stream&)> sample;
  std::function<double(const Point&, const Point&)> inner_v;
  std::function<SpecVector(const Point&)> lambda;
  std::function<Point(const Point&, const SpecVector&)> align;
};
AxiomModel model_of(const System& sys);

struct AxiomWitness {
  double violation = 0.0;
  Point c;
  Point x;
};

struct AxiomReport {
  double a1_max_violation = 0.0;
  double a2_max_violation = 0.0;
  double a3_max_violation = 0.0;
  int samples = 0;
  // Worst three (c, x) pairs per axiom, largest violation first.
  std::vector<AxiomWitness> a1_witnesses, a2_witnesses, a3_witnesses;

  bool pass(double tol) const {
    return a1_max_violation <= tol && a2_max_violation <= tol && a3_max_violation <= tol;
  }
};

AxiomReport check_axioms(const System& sys, int samples, std::uint64_t seed);
AxiomReport check_axioms(const AxiomModel& model, int samples, std::uint64_t seed);

// Default tolerance: 1e-8 when a symmetric block is involved, else 1e-12.
double default_tol(const System& sys);
bool involves_matrices(const System& sys);

}  // namespace ftvn
