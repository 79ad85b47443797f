#include "ftvn/core.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ftvn/eigh.h"
#include "ftvn/error.h"
#include "ftvn/systems.h"

namespace ftvn {

SpecVector lambda_of(const System& sys, const Point& x) {
  check_layout(sys, x);
  switch (sys.kind()) {
    case SystemKind::kSorted: {
      Eigen::VectorXd v = x.coords;
      std::sort(v.data(), v.data() + v.size(), std::greater<>());
      return SpecVector(std::move(v));
    }
    case SystemKind::kSymmetric:
      return eigvalsh(to_matrix(sys, x));
    case SystemKind::kNorm:
      return SpecVector{x.coords.norm()};
    case SystemKind::kProduct: {
      auto [a, b] = split(sys, x);
      return concat(lambda_of(sys.left(), a), lambda_of(sys.right(), b));
    }
  }
  throw LayoutError("unknown system kind");
}

double commutation_gap(const System& sys, const Point& x, const Point& y) {
  return inner_v(sys, x, y) - inner_w(lambda_of(sys, x), lambda_of(sys, y));
}

bool commutes(const System& sys, const Point& x, const Point& y, double tol) {
  return std::abs(commutation_gap(sys, x, y)) <= tol;
}

CommutationVerdicts commutation_verdicts(const System& sys, const Point& x, const Point& y,
                                         double tol) {
  const SpecVector lx = lambda_of(sys, x);
  const SpecVector ly = lambda_of(sys, y);
  CommutationVerdicts out;
  out.slack = inner_w(lx, ly) - inner_v(sys, x, y);
  out.by_inner = std::abs(out.slack) <= tol;

  const SpecVector a = lambda_of(sys, x + y);
  const SpecVector b = lx + ly;
  const double spread = (a.values - b.values).norm();
  out.by_additivity = spread * (a.values.norm() + b.values.norm()) / 2.0 <= tol;

  const double dv = norm_v(sys, x - y);
  const double dw = (lx.values - ly.values).norm();
  out.by_isometry = std::abs(dv * dv - dw * dw) / 2.0 <= tol;
  return out;
}

double range_tol(const SpecVector& q) {
  const double scale = q.size() ? q.values.cwiseAbs().maxCoeff() : 0.0;
  return 1e-10 * std::max(1.0, scale);
}

Point align(const System& sys, const Point& c, const SpecVector& q) {
  check_layout(sys, c);
  check_layout(sys, q);
  if (!in_range(sys, q, range_tol(q))) {
    throw DomainError("align: target spectrum is not in the range of lambda");
  }
  switch (sys.kind()) {
    case SystemKind::kSorted: {
      const int n = c.size();
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int i, int j) { return c[i] > c[j]; });
      Point x = Point::Zero(n);
      for (int k = 0; k < n; ++k) x[order[k]] = q[k];
      return x;
    }
    case SystemKind::kSymmetric: {
      const EigenPair ep = eigh(to_matrix(sys, c));
      const Eigen::MatrixXd& u = ep.basis;
      return pack_upper(u * q.values.asDiagonal() * u.transpose());
    }
    case SystemKind::kNorm: {
      const double r = std::max(q[0], 0.0);
      const double len = c.coords.norm();
      if (len == 0.0) {
        Point x = Point::Zero(c.size());
        x[0] = r;
        return x;
      }
      return Point(r / len * c.coords);
    }
    case SystemKind::kProduct: {
      auto [ca, cb] = split(sys, c);
      auto [qa, qb] = split(sys, q);
      return pair_point(align(sys.left(), ca, qa), align(sys.right(), cb, qb));
    }
  }
  throw LayoutError("unknown system kind");
}

OrbitSupport orbit_support(const System& sys, const Point& c, const Point& u) {
  const SpecVector lu = lambda_of(sys, u);
  OrbitSupport out;
  out.value = inner_w(lambda_of(sys, c), lu);
  out.maximizer = align(sys, c, lu);
  return out;
}

AxiomModel model_of(const System& sys) {
  AxiomModel m;
  m.sample = [sys](Stream& rng) { return random_point(sys, rng); };
  m.inner_v = [sys](const Point& x, const Point& y) { return inner_v(sys, x, y); };
  m.lambda = [sys](const Point& x) { return lambda_of(sys, x); };
  m.align = [sys](const Point& c, const SpecVector& q) { return align(sys, c, q); };
  return m;
}

namespace {

void keep_worst(std::vector<AxiomWitness>& list, double violation, const Point& c,
                const Point& x) {
  if (list.size() == 3 && violation <= list.back().violation) return;
  list.push_back({violation, c, x});
  std::stable_sort(list.begin(), list.end(),
                   [](const auto& a, const auto& b) { return a.violation > b.violation; });
  if (list.size() > 3) list.pop_back();
}

}  // namespace

AxiomReport check_axioms(const AxiomModel& model, int samples, std::uint64_t seed) {
  if (samples < 1) throw PreconditionError("check_axioms: samples must be >= 1");
  AxiomReport report;
  report.samples = samples;
  for (int i = 0; i < samples; ++i) {
    Stream rng(seed, static_cast<std::uint64_t>(i));
    const Point c = model.sample(rng);
    const Point x = model.sample(rng);
    const SpecVector lc = model.lambda(c);
    const SpecVector lx = model.lambda(x);

    const double a1 = std::abs(lx.values.norm() - std::sqrt(model.inner_v(x, x)));
    const double a2 = std::max(0.0, model.inner_v(c, x) - inner_w(lc, lx));
    double a3 = 0.0;
    try {
      const Point xa = model.align(c, lx);
      const SpecVector la = model.lambda(xa);
      a3 = (la.size() == lx.size() ? (la.values - lx.values).cwiseAbs().maxCoeff()
                                   : std::numeric_limits<double>::infinity()) +
           std::abs(model.inner_v(c, xa) - inner_w(lc, lx));
    } catch (const DomainError&) {
      a3 = std::numeric_limits<double>::infinity();
    }

    report.a1_max_violation = std::max(report.a1_max_violation, a1);
    report.a2_max_violation = std::max(report.a2_max_violation, a2);
    report.a3_max_violation = std::max(report.a3_max_violation, a3);
    keep_worst(report.a1_witnesses, a1, c, x);
    keep_worst(report.a2_witnesses, a2, c, x);
    keep_worst(report.a3_witnesses, a3, c, x);
  }
  return report;
}

AxiomReport check_axioms(const System& sys, int samples, std::uint64_t seed) {
  return check_axioms(model_of(sys), samples, seed);
}

bool involves_matrices(const System& sys) {
  if (sys.kind() == SystemKind::kSymmetric) return true;
  if (sys.kind() == SystemKind::kProduct) {
    return involves_matrices(sys.left()) || involves_matrices(sys.right());
  }
  return false;
}

double default_tol(const System& sys) { return involves_matrices(sys) ? 1e-8 : 1e-12; }

}  // namespace ftvn
