#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ftvn/point.h"
#include "ftvn/system.h"

namespace ftvn::oracle {

// max over all n! permutations P of <c, P u>. n <= 8.
double perms_support(const SpecVector& c, const SpecVector& u);

struct LPResult {
  bool feasible = false;
  Eigen::VectorXd coefficients;  // convex weights when feasible
  double max_residual = 0.0;
};

// Is x a convex combination of points, each coordinate matched within tol?
// At most 5040 points of dimension <= 16.
LPResult conv_member_lp(const std::vector<SpecVector>& points, const SpecVector& x, double tol);

struct GridOptions {
  // Only grid points passing this test are scored.
  std::function<bool(const SpecVector&)> feasible;
  // Grid the first dim-1 coordinates and set the last so the sum is fixed.
  std::optional<double> fixed_sum;
  // Lipschitz constant of u -> <u,z> - phi(u) on the box; sets `slack`.
  double lipschitz = 0.0;
  // Re-run on a box twice as wide, at twice the step, and compare.
  bool probe_unbounded = true;
};

struct GridConjugate {
  double value = 0.0;  // -inf when no grid point is feasible
  SpecVector argmax;
  double slack = 0.0;  // lipschitz * step * sqrt(dim)
  bool unbounded_suspected = false;
  long long evaluations = 0;
};

// max over the grid lo + k*step inside [lo, hi] of <u,z> - phi(u); dim <= 3.
GridConjugate grid_conjugate(const std::function<double(const SpecVector&)>& phi,
                             const SpecVector& lo, const SpecVector& hi, double step,
                             const SpecVector& z, const GridOptions& options = {});

// Seeded Givens product (see random.h).
Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed);

// Central differences; coordinate k is divided by its inner-product weight so
// the result is the gradient for the system's inner product.
Point finite_diff_grad(const System& sys, const std::function<double(const Point&)>& f,
                       const Point& x, double h);

}  // namespace ftvn::oracle
