#include "ftvn/interval.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ftvn {

Interval Interval::normalized() const {
  Interval out = *this;
  if (std::isinf(out.lo)) out.lo_closed = false;
  if (std::isinf(out.hi)) out.hi_closed = false;
  if (out.lo > out.hi || (out.lo == out.hi && !(out.lo_closed && out.hi_closed))) {
    return Empty();
  }
  return out;
}

bool Interval::empty() const {
  return lo > hi || (lo == hi && !(lo_closed && hi_closed)) || (std::isinf(lo) && lo == hi);
}

bool Interval::contains(double t) const {
  if (empty()) return false;
  const bool above = lo_closed ? t >= lo : t > lo;
  const bool below = hi_closed ? t <= hi : t < hi;
  return above && below;
}

bool Interval::operator==(const Interval& other) const {
  const Interval a = normalized(), b = other.normalized();
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed;
}

Interval Interval::closure() const {
  if (empty()) return Empty();
  return Interval{lo, hi, true, true}.normalized();
}

Interval Interval::interior() const {
  if (empty() || lo == hi) return Empty();
  return Interval{lo, hi, false, false}.normalized();
}

Interval Interval::intersect(const Interval& other) const {
  if (empty() || other.empty()) return Empty();
  Interval out;
  if (lo > other.lo) {
    out.lo = lo, out.lo_closed = lo_closed;
  } else if (other.lo > lo) {
    out.lo = other.lo, out.lo_closed = other.lo_closed;
  } else {
    out.lo = lo, out.lo_closed = lo_closed && other.lo_closed;
  }
  if (hi < other.hi) {
    out.hi = hi, out.hi_closed = hi_closed;
  } else if (other.hi < hi) {
    out.hi = other.hi, out.hi_closed = other.hi_closed;
  } else {
    out.hi = hi, out.hi_closed = hi_closed && other.hi_closed;
  }
  return out.normalized();
}

Interval Interval::abs() const {
  if (empty()) return Empty();
  if (lo >= 0.0) return *this;
  if (hi <= 0.0) return Interval{-hi, -lo, hi_closed, lo_closed}.normalized();
  // Straddles zero: [0, max(|lo|, hi)].
  Interval out{0.0, 0.0, true, true};
  if (-lo > hi) {
    out.hi = -lo, out.hi_closed = lo_closed;
  } else if (hi > -lo) {
    out.hi = hi, out.hi_closed = hi_closed;
  } else {
    out.hi = hi, out.hi_closed = hi_closed || lo_closed;
  }
  return out.normalized();
}

std::string Interval::to_string() const {
  if (empty()) return "{}";
  std::ostringstream s;
  s << (lo_closed ? '[' : '(') << lo << ", " << hi << (hi_closed ? ']' : ')');
  return s.str();
}

RadialSet RadialSet::closure() const { return {radii.closure().intersect(Interval::NonNegative())}; }

RadialSet RadialSet::interior() const {
  if (radii.empty()) return {Interval::Empty()};
  Interval in = radii.interior();
  // Zero is interior in R^d as soon as a half-open [0, eps) is inside.
  if (radii.lo == 0.0 && radii.lo_closed && radii.hi > 0.0) {
    in = Interval{0.0, radii.hi, true, false};
  }
  return {in.intersect(Interval::NonNegative())};
}

bool RadialSet::is_convex() const {
  return radii.empty() || (radii.lo == 0.0 && radii.lo_closed);
}

RadialSet norm_preimage(const Interval& q) { return {q.intersect(Interval::NonNegative())}; }

}  // namespace ftvn
