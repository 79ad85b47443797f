#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ftvn {

// An element of the ambient space V, stored as flat coordinates in the
// layout of its system (see System). Symmetric matrices store the upper
// triangle row by row; product points store the left block first.
struct Point {
  Eigen::VectorXd coords;

  Point() = default;
  explicit Point(Eigen::VectorXd c) : coords(std::move(c)) {}
  Point(std::initializer_list<double> values);

  int size() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords(i); }
  double& operator[](int i) { return coords(i); }

  static Point Zero(int dim) { return Point(Eigen::VectorXd::Zero(dim)); }
};

// An element of the spectral space W.
struct SpecVector {
  Eigen::VectorXd values;

  SpecVector() = default;
  explicit SpecVector(Eigen::VectorXd v) : values(std::move(v)) {}
  SpecVector(std::initializer_list<double> values);
  explicit SpecVector(std::span<const double> values);

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values(i); }
  double& operator[](int i) { return values(i); }
  std::vector<double> to_std() const;

  static SpecVector Zero(int dim) { return SpecVector(Eigen::VectorXd::Zero(dim)); }
};

inline Point operator+(const Point& a, const Point& b) { return Point(a.coords + b.coords); }
inline Point operator-(const Point& a, const Point& b) { return Point(a.coords - b.coords); }
inline Point operator*(double t, const Point& a) { return Point(t * a.coords); }

inline SpecVector operator+(const SpecVector& a, const SpecVector& b) {
  return SpecVector(a.values + b.values);
}
inline SpecVector operator-(const SpecVector& a, const SpecVector& b) {
  return SpecVector(a.values - b.values);
}
inline SpecVector operator*(double t, const SpecVector& a) { return SpecVector(t * a.values); }

// Standard inner product on W.
inline double inner_w(const SpecVector& a, const SpecVector& b) { return a.values.dot(b.values); }

// Largest absolute coordinate difference.
inline double max_abs_diff(const SpecVector& a, const SpecVector& b) {
  return (a.values - b.values).cwiseAbs().maxCoeff();
}

}  // namespace ftvn
