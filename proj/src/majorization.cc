#include "ftvn/majorization.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ftvn/core.h"
#include "ftvn/error.h"

namespace ftvn {

MajorizationVerdict vec_majorized(const SpecVector& u, const SpecVector& v, double tol) {
  if (u.size() != v.size()) throw LayoutError("vec_majorized: length mismatch");
  Eigen::VectorXd a = u.values, b = v.values;
  std::sort(a.data(), a.data() + a.size(), std::greater<>());
  std::sort(b.data(), b.data() + b.size(), std::greater<>());
  MajorizationVerdict out;
  out.worst_slack = 0.0;
  double sa = 0.0, sb = 0.0;
  const int n = u.size();
  for (int k = 0; k < n; ++k) {
    sa += a(k);
    sb += b(k);
    if (k + 1 < n) out.worst_slack = std::min(out.worst_slack, sb - sa);
  }
  out.worst_slack = std::min(out.worst_slack, -std::abs(sa - sb));
  out.holds = out.worst_slack >= -tol;
  return out;
}

MajorizationVerdict reduced_majorized(const System& sys, const SpecVector& u,
                                      const SpecVector& v, double tol) {
  check_layout(sys, u);
  check_layout(sys, v);
  switch (sys.kind()) {
    case SystemKind::kSorted:
    case SystemKind::kSymmetric:
      return vec_majorized(u, v, tol);
    case SystemKind::kNorm: {
      MajorizationVerdict out;
      out.worst_slack = std::min(0.0, std::abs(v[0]) - std::abs(u[0]));
      out.holds = out.worst_slack >= -tol;
      return out;
    }
    case SystemKind::kProduct: {
      auto [ua, ub] = split(sys, u);
      auto [va, vb] = split(sys, v);
      auto left = reduced_majorized(sys.left(), ua, va, tol);
      auto right = reduced_majorized(sys.right(), ub, vb, tol);
      MajorizationVerdict out;
      out.worst_slack = std::min(left.worst_slack, right.worst_slack);
      out.holds = left.holds && right.holds;
      return out;
    }
  }
  throw LayoutError("unknown system kind");
}

MajorizationVerdict majorized(const System& sys, const Point& x, const Point& y, double tol) {
  return reduced_majorized(sys, lambda_of(sys, x), lambda_of(sys, y), tol);
}

namespace {

void check_tuple(const System& sys, const std::vector<Point>& xs) {
  if (xs.size() < 2 || xs.size() > 8) {
    throw PreconditionError("lidskii: tuple length must be between 2 and 8");
  }
  for (const auto& x : xs) check_layout(sys, x);
}

}  // namespace

double lidskii_slack(const System& sys, const std::vector<Point>& xs, const Point& c) {
  check_tuple(sys, xs);
  Point total = Point::Zero(sys.dim_v());
  SpecVector spectra = SpecVector::Zero(sys.dim_w());
  for (const auto& x : xs) {
    total = total + x;
    spectra = spectra + lambda_of(sys, x);
  }
  const SpecVector lc = lambda_of(sys, c);
  return inner_w(lc, spectra) - inner_w(lc, lambda_of(sys, total));
}

MajorizationVerdict lidskii_majorization(const System& sys, const std::vector<Point>& xs,
                                         double tol) {
  check_tuple(sys, xs);
  Point total = Point::Zero(sys.dim_v());
  SpecVector spectra = SpecVector::Zero(sys.dim_w());
  for (const auto& x : xs) {
    total = total + x;
    spectra = spectra + lambda_of(sys, x);
  }
  return reduced_majorized(sys, lambda_of(sys, total), spectra, tol);
}

}  // namespace ftvn
