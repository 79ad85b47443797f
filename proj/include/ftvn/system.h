#pragma once

#include <memory>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "ftvn/point.h"

namespace ftvn {

enum class SystemKind { kSorted, kSymmetric, kNorm, kProduct };

// Immutable descriptor of one FTvN system (V, W, lambda) together with its
// reduced system (W, W, mu). Copies share the underlying node.
//
//   Sorted(n):    V = W = R^n, lambda = decreasing rearrangement.
//   Symmetric(n): V = S^n (trace inner product), W = R^n, lambda = eigenvalues
//                 in decreasing order. V is stored as n(n+1)/2 coordinates.
//   Norm(d):      V = R^d, W = R, lambda = Euclidean norm.
//   Product(a,b): V = Va x Vb, W = Wa x Wb, lambda componentwise.
class System {
 public:
  static System Sorted(int n);
  static System Symmetric(int n);
  static System Norm(int d);
  static System Product(const System& left, const System& right);

  SystemKind kind() const;
  // n for Sorted/Symmetric, d for Norm, 0 for Product.
  int order() const;
  int dim_v() const;
  int dim_w() const;
  // Every shipped kind comes with a reduced system.
  bool has_reduced() const { return true; }

  // Only valid for products.
  const System& left() const;
  const System& right() const;

  // Canonical descriptor, e.g. "product(sorted:1,norm:3)".
  std::string descriptor() const;

  // Squared norm of the k-th flat coordinate direction in V. The inner
  // product on V is sum_k weight(k) * x_k * y_k: off-diagonal symmetric
  // coordinates carry weight 2.
  const Eigen::VectorXd& coord_weights() const;

  bool operator==(const System& other) const { return descriptor() == other.descriptor(); }

 private:
  struct Node;
  explicit System(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Throws LayoutError unless x has dim_v coordinates; DomainError if any
// coordinate is not finite.
void check_layout(const System& sys, const Point& x);
void check_layout(const System& sys, const SpecVector& w);

double inner_v(const System& sys, const Point& x, const Point& y);
double norm_v(const System& sys, const Point& x);

// Index of entry (i, j), i <= j, in the packed upper triangle of an n x n
// symmetric matrix.
inline int packed_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

Point vector_point(std::span<const double> values);
// Packs a symmetric matrix. Throws DomainError if the matrix is not square
// or is asymmetric beyond 1e-12 (relative to max(1, max |a_ij|)).
Point symmetric_point(const Eigen::MatrixXd& m);
// Packs the upper triangle of a matrix that is symmetric by construction
// (no validation).
Point pack_upper(const Eigen::MatrixXd& m);
Point diagonal_point(std::span<const double> diag);
Point pair_point(const Point& left, const Point& right);

// Unpacks a Symmetric(n) point into a full matrix.
Eigen::MatrixXd to_matrix(const System& sys, const Point& x);

// Splits a product point / spectral vector into its two blocks.
std::pair<Point, Point> split(const System& sys, const Point& x);
std::pair<SpecVector, SpecVector> split(const System& sys, const SpecVector& w);
SpecVector concat(const SpecVector& a, const SpecVector& b);

}  // namespace ftvn
