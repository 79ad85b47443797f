#pragma once

#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "ftvn/point.h"
#include "ftvn/system.h"

namespace ftvn::testing {

inline Point diag(std::initializer_list<double> d) {
  return diagonal_point(std::vector<double>(d));
}

inline Point sym(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  Eigen::MatrixXd m(n, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return symmetric_point(m);
}

inline double max_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace ftvn::testing
