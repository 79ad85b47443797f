#pragma once

#include <Eigen/Dense>

#include "ftvn/point.h"

namespace ftvn {

struct EigenPair {
  Eigen::MatrixXd basis;  // columns are eigenvectors
  SpecVector values;      // nonincreasing
  int sweeps = 0;
};

// Cyclic Jacobi eigensolver for a symmetric matrix (n <= 64). Eigenpairs come
// out in decreasing order, ties broken by original diagonal index. Inside a
// cluster of equal eigenvalues the basis is rebuilt from e_1, e_2, ... so the
// result does not depend on the rotation path.
EigenPair eigh(const Eigen::MatrixXd& a);

// Eigenvalues only, same ordering.
SpecVector eigvalsh(const Eigen::MatrixXd& a);

}  // namespace ftvn
