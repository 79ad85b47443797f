#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ftvn {

enum class Relation { kLessEq, kEqual, kGreaterEq };

struct LinearConstraint {
  Eigen::VectorXd a;
  Relation rel = Relation::kEqual;
  double b = 0.0;
};

// maximize objective . x subject to rows, with x_j >= 0 unless free[j].
struct LinearProgram {
  int num_vars = 0;
  std::vector<bool> free;  // empty means all variables nonnegative
  Eigen::VectorXd objective;
  std::vector<LinearConstraint> rows;

  void add(Eigen::VectorXd a, Relation rel, double b) { rows.push_back({std::move(a), rel, b}); }
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  Eigen::VectorXd x;
  double value = 0.0;
  int pivots = 0;
};

// Dense two-phase tableau simplex with Bland's rule. Deterministic and slow.
LPSolution solve_lp(const LinearProgram& lp);

}  // namespace ftvn
