#include "ftvn/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ftvn/error.h"
#include "ftvn/random.h"
#include "ftvn/simplex.h"

namespace ftvn::oracle {

double perms_support(const SpecVector& c, const SpecVector& u) {
  if (c.size() != u.size()) throw LayoutError("perms_support: length mismatch");
  const int n = c.size();
  if (n > 8) throw CapabilityError("perms_support: n > 8");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += c[i] * u[perm[i]];
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n == 0 ? 0.0 : best;
}

LPResult conv_member_lp(const std::vector<SpecVector>& points, const SpecVector& x, double tol) {
  if (points.empty()) return {};
  if (points.size() > 5040) throw CapabilityError("conv_member_lp: more than 5040 points");
  const int d = x.size();
  if (d > 16) throw CapabilityError("conv_member_lp: dimension above 16");
  const int m = static_cast<int>(points.size());
  for (const auto& p : points)
    if (p.size() != d) throw LayoutError("conv_member_lp: point length mismatch");

  LinearProgram lp;
  lp.num_vars = m;
  lp.objective = Eigen::VectorXd::Zero(m);
  for (int r = 0; r < d; ++r) {
    Eigen::VectorXd row(m);
    for (int i = 0; i < m; ++i) row(i) = points[i][r];
    lp.add(row, Relation::kLessEq, x[r] + tol);
    lp.add(row, Relation::kGreaterEq, x[r] - tol);
  }
  lp.add(Eigen::VectorXd::Ones(m), Relation::kEqual, 1.0);

  const LPSolution sol = solve_lp(lp);
  LPResult out;
  if (sol.status != LPStatus::kOptimal) return out;
  out.feasible = true;
  out.coefficients = sol.x;
  Eigen::VectorXd recon = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < m; ++i) recon += sol.x(i) * points[i].values;
  out.max_residual = d ? (recon - x.values).cwiseAbs().maxCoeff() : 0.0;
  return out;
}

namespace {

struct GridPass {
  double value = -std::numeric_limits<double>::infinity();
  SpecVector argmax;
  long long evaluations = 0;
};

// Visits lo + k*step for k in [k_lo, k_hi] on each gridded axis.
GridPass run_grid(const std::function<double(const SpecVector&)>& phi, const SpecVector& lo,
                  double step, const std::vector<long long>& k_lo,
                  const std::vector<long long>& k_hi, const SpecVector& z,
                  const GridOptions& options) {
  const int dim = z.size();
  const int axes = options.fixed_sum ? dim - 1 : dim;
  GridPass pass;
  std::vector<long long> k(k_lo.begin(), k_lo.end());
  SpecVector u = SpecVector::Zero(dim);
  for (;;) {
    double partial = 0.0;
    for (int a = 0; a < axes; ++a) {
      u[a] = lo[a] + static_cast<double>(k[a]) * step;
      partial += u[a];
    }
    if (options.fixed_sum) u[dim - 1] = *options.fixed_sum - partial;
    if (!options.feasible || options.feasible(u)) {
      const double f = phi(u);
      ++pass.evaluations;
      if (std::isfinite(f)) {
        const double val = inner_w(u, z) - f;
        if (val > pass.value) {
          pass.value = val;
          pass.argmax = u;
        }
      }
    }
    int a = 0;
    while (a < axes && ++k[a] > k_hi[a]) {
      k[a] = k_lo[a];
      ++a;
    }
    if (a == axes) break;
  }
  return pass;
}

}  // namespace

GridConjugate grid_conjugate(const std::function<double(const SpecVector&)>& phi,
                             const SpecVector& lo, const SpecVector& hi, double step,
                             const SpecVector& z, const GridOptions& options) {
  const int dim = z.size();
  if (dim < 1 || dim > 3) throw CapabilityError("grid_conjugate: dimension must be 1..3");
  if (lo.size() != dim || hi.size() != dim) throw LayoutError("grid_conjugate: box mismatch");
  if (!(step > 0.0)) throw DomainError("grid_conjugate: step must be positive");
  const int axes = options.fixed_sum ? dim - 1 : dim;
  std::vector<long long> k_lo(axes, 0), k_hi(axes);
  double count = 1.0;
  for (int a = 0; a < axes; ++a) {
    if (hi[a] < lo[a]) throw DomainError("grid_conjugate: empty box");
    k_hi[a] = static_cast<long long>(std::floor((hi[a] - lo[a]) / step + 1e-9));
    count *= static_cast<double>(k_hi[a] + 1);
  }
  const double budget = options.probe_unbounded ? 2.0 * count : count;
  if (budget > 1e7) throw CapabilityError("grid_conjugate: grid exceeds 1e7 points");

  GridConjugate out;
  if (axes == 0) {
    SpecVector u{*options.fixed_sum};
    out.value = (!options.feasible || options.feasible(u)) ? inner_w(u, z) - phi(u)
                                                           : -std::numeric_limits<double>::infinity();
    out.argmax = u;
    out.evaluations = 1;
    return out;
  }
  GridPass pass = run_grid(phi, lo, step, k_lo, k_hi, z, options);
  out.value = pass.value;
  out.argmax = pass.argmax;
  out.evaluations = pass.evaluations;
  out.slack = options.lipschitz * step * std::sqrt(static_cast<double>(dim));

  if (options.probe_unbounded) {
    // Twice as wide at twice the step; its points stay on the fine lattice.
    std::vector<long long> w_lo(axes), w_hi(axes);
    for (int a = 0; a < axes; ++a) {
      const long long half = k_hi[a] / 2;
      const long long pad = (half + 1) / 2;
      w_lo[a] = -pad;
      w_hi[a] = half + pad;
    }
    GridPass wide = run_grid(phi, lo, 2.0 * step, w_lo, w_hi, z, options);
    out.evaluations += wide.evaluations;
    out.unbounded_suspected =
        wide.value > out.value + 1e-9 * std::max(1.0, std::abs(out.value));
  }
  return out;
}

Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed) {
  return ftvn::random_orthogonal(n, seed);
}

Point finite_diff_grad(const System& sys, const std::function<double(const Point&)>& f,
                       const Point& x, double h) {
  check_layout(sys, x);
  if (!(h > 0.0)) throw DomainError("finite_diff_grad: step must be positive");
  const Eigen::VectorXd& w = sys.coord_weights();
  Point g = Point::Zero(x.size());
  for (int k = 0; k < x.size(); ++k) {
    Point xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const double fp = f(xp), fm = f(xm);
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
      throw DomainError("finite_diff_grad: non-finite evaluation");
    }
    g[k] = (fp - fm) / (2.0 * h) / w(k);
  }
  return g;
}

}  // namespace ftvn::oracle
