#pragma once

#include <limits>
#include <string>

namespace ftvn {

// A real interval with open or closed ends; lo/hi may be infinite (then the
// matching end is open). The canonical empty interval has empty() == true.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval Empty() { return {1.0, 0.0, false, false}; }
  static Interval Point(double t) { return {t, t, true, true}; }
  static Interval Real() {
    const double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf, false, false};
  }
  static Interval NonNegative() {
    return {0.0, std::numeric_limits<double>::infinity(), true, false};
  }

  bool empty() const;
  bool contains(double t) const;
  bool operator==(const Interval& other) const;

  Interval closure() const;
  Interval interior() const;
  Interval intersect(const Interval& other) const;
  // {|t| : t in this}.
  Interval abs() const;

  bool is_closed() const { return closure() == *this; }
  bool is_open() const { return interior() == *this; }

  std::string to_string() const;

 private:
  Interval normalized() const;
};

// E = {x in R^d : |x| in radii} for radii inside [0, inf). Topology is that
// of R^d, i.e. 0 is an interior radius when [0, eps) lies in radii.
struct RadialSet {
  Interval radii;

  bool contains_radius(double r) const { return radii.contains(r); }
  RadialSet closure() const;
  RadialSet interior() const;
  bool is_closed() const { return closure() == *this; }
  bool is_open() const { return interior() == *this; }
  bool is_convex() const;
  bool empty() const { return radii.empty(); }
  bool operator==(const RadialSet& other) const { return radii == other.radii; }
};

// lambda^{-1}(Q) for the norm system: radii = Q intersected with [0, inf).
RadialSet norm_preimage(const Interval& q);

}  // namespace ftvn
