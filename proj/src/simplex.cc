#include "ftvn/simplex.h"

#include <cmath>
#include <limits>

#include "ftvn/error.h"

namespace ftvn {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;
constexpr double kFeasEps = 1e-9;
constexpr int kMaxPivots = 200000;

class Tableau {
 public:
  Tableau(int rows, int cols) : t_(Eigen::MatrixXd::Zero(rows, cols + 1)), basis_(rows, -1) {}

  double& at(int i, int j) { return t_(i, j); }
  double& rhs(int i) { return t_(i, t_.cols() - 1); }
  int rows() const { return static_cast<int>(t_.rows()); }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i < rows(); ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[r] = c;
    ++pivots_;
    if (pivots_ > kMaxPivots) throw CapabilityError("simplex: pivot limit exceeded");
  }

  // Runs Bland-rule iterations maximizing cost . x over allowed columns.
  // Returns false when unbounded.
  bool optimize(const Eigen::VectorXd& cost, const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols(); ++j) {
        if (!allowed[j]) continue;
        double reduced = cost(j);
        for (int i = 0; i < rows(); ++i) reduced -= cost(basis_[i]) * t_(i, j);
        if (reduced > kCostEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        if (t_(i, enter) <= kPivotEps) continue;
        const double ratio = rhs(i) / t_(i, enter);
        if (ratio < best - 1e-13 ||
            (ratio <= best + 1e-13 && leave >= 0 && basis_[i] < basis_[leave])) {
          if (ratio < best) best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  double objective(const Eigen::VectorXd& cost) {
    double v = 0.0;
    for (int i = 0; i < rows(); ++i) v += cost(basis_[i]) * rhs(i);
    return v;
  }

  int pivots() const { return pivots_; }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  int pivots_ = 0;
};

}  // namespace

LPSolution solve_lp(const LinearProgram& lp) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());
  auto is_free = [&](int j) { return !lp.free.empty() && lp.free[j]; };

  // Column layout: [x+ (n)] [x- for free vars] [slack/surplus] [artificial].
  std::vector<int> neg_col(n, -1);
  int cols = n;
  for (int j = 0; j < n; ++j)
    if (is_free(j)) neg_col[j] = cols++;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i)
    if (lp.rows[i].rel != Relation::kEqual) slack_col[i] = cols++;
  const int first_art = cols;
  std::vector<double> sign(m, 1.0);
  for (int i = 0; i < m; ++i) {
    if (lp.rows[i].a.size() != n) throw LayoutError("solve_lp: row has wrong length");
    sign[i] = lp.rows[i].b < 0.0 ? -1.0 : 1.0;
    const bool slack_basic = lp.rows[i].rel == Relation::kLessEq && sign[i] > 0.0;
    const bool surplus_basic = lp.rows[i].rel == Relation::kGreaterEq && sign[i] < 0.0;
    if (!slack_basic && !surplus_basic) art_col[i] = cols++;
  }

  Tableau tab(m, cols);
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    for (int j = 0; j < n; ++j) {
      tab.at(i, j) = sign[i] * row.a(j);
      if (neg_col[j] >= 0) tab.at(i, neg_col[j]) = -sign[i] * row.a(j);
    }
    if (slack_col[i] >= 0) {
      tab.at(i, slack_col[i]) = sign[i] * (row.rel == Relation::kLessEq ? 1.0 : -1.0);
    }
    tab.rhs(i) = sign[i] * row.b;
    if (art_col[i] >= 0) {
      tab.at(i, art_col[i]) = 1.0;
      tab.basis()[i] = art_col[i];
    } else {
      tab.basis()[i] = slack_col[i];
    }
  }

  LPSolution out;
  std::vector<bool> allowed(cols, true);
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols);
  for (int j = first_art; j < cols; ++j) phase1(j) = -1.0;
  tab.optimize(phase1, allowed);
  if (-tab.objective(phase1) > kFeasEps) {
    out.status = LPStatus::kInfeasible;
    out.pivots = tab.pivots();
    return out;
  }

  // Drive remaining artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] < first_art) continue;
    for (int j = 0; j < first_art; ++j) {
      if (std::abs(tab.at(i, j)) > 1e-9) {
        tab.pivot(i, j);
        break;
      }
    }
  }
  for (int j = first_art; j < cols; ++j) allowed[j] = false;

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
  for (int j = 0; j < n; ++j) {
    cost(j) = lp.objective.size() ? lp.objective(j) : 0.0;
    if (neg_col[j] >= 0) cost(neg_col[j]) = -cost(j);
  }
  const bool bounded = tab.optimize(cost, allowed);
  out.pivots = tab.pivots();
  if (!bounded) {
    out.status = LPStatus::kUnbounded;
    return out;
  }

  Eigen::VectorXd full = Eigen::VectorXd::Zero(cols);
  for (int i = 0; i < m; ++i) full(tab.basis()[i]) = tab.rhs(i);
  out.x.resize(n);
  for (int j = 0; j < n; ++j) out.x(j) = full(j) - (neg_col[j] >= 0 ? full(neg_col[j]) : 0.0);
  out.value = lp.objective.size() ? lp.objective.dot(out.x) : 0.0;
  out.status = LPStatus::kOptimal;
  return out;
}

}  // namespace ftvn
