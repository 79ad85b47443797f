#include "ftvn/convex.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ftvn/core.h"
#include "ftvn/error.h"
#include "ftvn/oracle.h"
#include "ftvn/simplex.h"
#include "ftvn/systems.h"

namespace ftvn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double scale_of(const SpecVector& v) {
  return v.size() ? std::max(1.0, v.values.cwiseAbs().maxCoeff()) : 1.0;
}

// True when every block of W is a sorted block (no norm blocks).
bool all_sorted_blocks(const System& sys) {
  switch (sys.kind()) {
    case SystemKind::kSorted:
    case SystemKind::kSymmetric:
      return true;
    case SystemKind::kNorm:
      return false;
    case SystemKind::kProduct:
      return all_sorted_blocks(sys.left()) && all_sorted_blocks(sys.right());
  }
  return false;
}

bool linear_is_spectral(const System& sys, const SpecVector& b) {
  switch (sys.kind()) {
    case SystemKind::kSorted:
    case SystemKind::kSymmetric:
      return (b.values.array() == b[0]).all();
    case SystemKind::kNorm:
      return b[0] == 0.0;
    case SystemKind::kProduct: {
      auto [l, r] = split(sys, b);
      return linear_is_spectral(sys.left(), l) && linear_is_spectral(sys.right(), r);
    }
  }
  return false;
}

// ran(lambda) as linear rows: u_i >= u_j pairs and u_i >= 0 indices.
void range_rows(const System& sys, int offset, std::vector<std::pair<int, int>>& ge,
                std::vector<int>& nonneg) {
  switch (sys.kind()) {
    case SystemKind::kSorted:
    case SystemKind::kSymmetric:
      for (int i = 0; i + 1 < sys.dim_w(); ++i) ge.emplace_back(offset + i, offset + i + 1);
      break;
    case SystemKind::kNorm:
      nonneg.push_back(offset);
      break;
    case SystemKind::kProduct:
      range_rows(sys.left(), offset, ge, nonneg);
      range_rows(sys.right(), offset + sys.left().dim_w(), ge, nonneg);
      break;
  }
}

// Nonincreasing isotonic regression (pool adjacent violators).
Eigen::VectorXd isotonic_nonincreasing(const Eigen::VectorXd& y) {
  std::vector<double> mean;
  std::vector<int> count;
  for (int i = 0; i < y.size(); ++i) {
    mean.push_back(y(i));
    count.push_back(1);
    while (mean.size() > 1 && mean[mean.size() - 2] < mean.back()) {
      const int c = count.back() + count[count.size() - 2];
      const double m = (mean.back() * count.back() + mean[mean.size() - 2] * count[count.size() - 2]) / c;
      mean.pop_back();
      count.pop_back();
      mean.back() = m;
      count.back() = c;
    }
  }
  Eigen::VectorXd out(y.size());
  int k = 0;
  for (std::size_t b = 0; b < mean.size(); ++b)
    for (int j = 0; j < count[b]; ++j) out(k++) = mean[b];
  return out;
}

// Projection of w in ran(lambda) onto conv[p], blockwise.
SpecVector project_onto_orbit_hull(const System& sys, const SpecVector& w, const SpecVector& p) {
  switch (sys.kind()) {
    case SystemKind::kSorted:
    case SystemKind::kSymmetric:
      return SpecVector(w.values - isotonic_nonincreasing(w.values - p.values));
    case SystemKind::kNorm:
      return SpecVector{std::clamp(w[0], -std::abs(p[0]), std::abs(p[0]))};
    case SystemKind::kProduct: {
      auto [wl, wr] = split(sys, w);
      auto [pl, pr] = split(sys, p);
      return concat(project_onto_orbit_hull(sys.left(), wl, pl),
                    project_onto_orbit_hull(sys.right(), wr, pr));
    }
  }
  throw LayoutError("unknown system kind");
}

std::vector<SpecVector> hull_vertices(const System& sys, const SpectralSet& q) {
  std::vector<SpecVector> out;
  const std::vector<SpecVector>* pts = nullptr;
  if (const auto* h = std::get_if<MajorizationHull>(&q)) pts = &h->generators;
  if (const auto* u = std::get_if<OrbitUnion>(&q)) pts = &u->points;
  if (!pts) throw CapabilityError("expected a hull or orbit union");
  for (const auto& g : *pts) {
    auto v = orbit_vertices(sys, g);
    out.insert(out.end(), v.begin(), v.end());
    if (out.size() > 5040) throw CapabilityError("too many orbit vertices for the LP");
  }
  return out;
}

// Lifts a W-side maximizer to V.
void lift_maximizer(const System& sys, const SpectralFn& phi, const Point& z, const SpecVector& u,
                    ConjugateResult& out) {
  out.w_maximizer = u;
  if (in_range(sys, u, range_tol(u))) {
    out.maximizer = align(sys, z, u);
  } else if (is_spectral(sys, phi)) {
    out.maximizer = align(sys, z, mu_of(sys, u));
  }
}

// phi*(w) on W for spectral phi, when a closed form exists.
std::optional<ConjugateResult> closed_form(const System& sys, const SpectralFn& phi,
                                           const SpecVector& w, double tol) {
  ConjugateResult out;
  const int m = w.size();
  switch (phi.kind) {
    case FnKind::kQuadratic:
      out.value = 0.5 * w.values.squaredNorm();
      out.w_maximizer = w;
      return out;
    case FnKind::kLinear:
      out.value = max_abs_diff(w, phi.b) <= tol ? 0.0 : kInf;
      break;
    case FnKind::kMaxComponent:
      out.value = (w.values.minCoeff() >= -tol && std::abs(w.values.sum() - 1.0) <= tol) ? 0.0 : kInf;
      break;
    case FnKind::kSumKLargest:
      out.value = (w.values.minCoeff() >= -tol && w.values.maxCoeff() <= 1.0 + tol &&
                   std::abs(w.values.sum() - phi.k) <= tol)
                      ? 0.0
                      : kInf;
      break;
    case FnKind::kIndicator: {
      const SupportValue h = support_w(sys, *phi.set, w);
      out.value = h.value;
      out.exact = !h.approximate;
      if (h.argmax) out.w_maximizer = *h.argmax;
      return out;
    }
    case FnKind::kSupport: {
      SpectralSet hull = *phi.set;
      if (const auto* u = std::get_if<OrbitUnion>(&hull)) {
        if (u->points.empty()) return std::nullopt;
        hull = MajorizationHull{u->points};
      }
      out.value = member_w(sys, hull, w, tol) ? 0.0 : kInf;
      break;
    }
    case FnKind::kCustom:
      return std::nullopt;
  }
  if (std::isfinite(out.value)) out.w_maximizer = SpecVector::Zero(m);
  return out;
}

LinearProgram hull_lp(const System& sys, const SpectralFn& phi, const SpecVector& lz,
                      const std::vector<SpecVector>& verts, bool restrict_to_range) {
  const int m = lz.size();
  const int nv = static_cast<int>(verts.size());
  // Variables: theta (nv) | u (m, free) | extra.
  std::vector<SpecVector> inner_verts;
  if (phi.kind == FnKind::kIndicator || phi.kind == FnKind::kSupport) {
    inner_verts = hull_vertices(sys, *phi.set);
  }
  const int ni = static_cast<int>(inner_verts.size());
  int extra = 0;
  if (phi.kind == FnKind::kMaxComponent || phi.kind == FnKind::kSupport) extra = 1;
  if (phi.kind == FnKind::kSumKLargest) extra = 1 + m;
  if (phi.kind == FnKind::kIndicator) extra = ni;
  const int u0 = nv, x0 = nv + m;
  LinearProgram lp;
  lp.num_vars = nv + m + extra;
  lp.free.assign(lp.num_vars, false);
  for (int i = 0; i < m; ++i) lp.free[u0 + i] = true;
  if (phi.kind == FnKind::kMaxComponent || phi.kind == FnKind::kSupport ||
      phi.kind == FnKind::kSumKLargest) {
    lp.free[x0] = true;
  }
  lp.objective = Eigen::VectorXd::Zero(lp.num_vars);
  for (int i = 0; i < m; ++i) lp.objective(u0 + i) = lz[i];

  auto row = [&] { return Eigen::VectorXd::Zero(lp.num_vars).eval(); };
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd r = row();
    r(u0 + i) = 1.0;
    for (int j = 0; j < nv; ++j) r(j) = -verts[j][i];
    lp.add(r, Relation::kEqual, 0.0);
  }
  {
    Eigen::VectorXd r = row();
    r.head(nv).setOnes();
    lp.add(r, Relation::kEqual, 1.0);
  }
  if (restrict_to_range) {
    std::vector<std::pair<int, int>> ge;
    std::vector<int> nonneg;
    range_rows(sys, 0, ge, nonneg);
    for (auto [i, j] : ge) {
      Eigen::VectorXd r = row();
      r(u0 + i) = 1.0;
      r(u0 + j) = -1.0;
      lp.add(r, Relation::kGreaterEq, 0.0);
    }
    for (int i : nonneg) {
      Eigen::VectorXd r = row();
      r(u0 + i) = 1.0;
      lp.add(r, Relation::kGreaterEq, 0.0);
    }
  }

  switch (phi.kind) {
    case FnKind::kLinear:
      for (int i = 0; i < m; ++i) lp.objective(u0 + i) -= phi.b[i];
      break;
    case FnKind::kMaxComponent:
      lp.objective(x0) = -1.0;
      for (int i = 0; i < m; ++i) {
        Eigen::VectorXd r = row();
        r(x0) = 1.0;
        r(u0 + i) = -1.0;
        lp.add(r, Relation::kGreaterEq, 0.0);
      }
      break;
    case FnKind::kSumKLargest:
      // k t + sum e_i with e_i >= u_i - t, e >= 0.
      lp.objective(x0) = -phi.k;
      for (int i = 0; i < m; ++i) {
        lp.objective(x0 + 1 + i) = -1.0;
        Eigen::VectorXd r = row();
        r(x0 + 1 + i) = 1.0;
        r(u0 + i) = -1.0;
        r(x0) = 1.0;
        lp.add(r, Relation::kGreaterEq, 0.0);
      }
      break;
    case FnKind::kSupport:
      lp.objective(x0) = -1.0;
      for (const auto& v : inner_verts) {
        Eigen::VectorXd r = row();
        r(x0) = 1.0;
        for (int i = 0; i < m; ++i) r(u0 + i) = -v[i];
        lp.add(r, Relation::kGreaterEq, 0.0);
      }
      break;
    case FnKind::kIndicator:
      for (int i = 0; i < m; ++i) {
        Eigen::VectorXd r = row();
        r(u0 + i) = 1.0;
        for (int j = 0; j < ni; ++j) r(x0 + j) = -inner_verts[j][i];
        lp.add(r, Relation::kEqual, 0.0);
      }
      {
        Eigen::VectorXd r = row();
        r.segment(x0, ni).setOnes();
        lp.add(r, Relation::kEqual, 1.0);
      }
      break;
    default:
      throw CapabilityError("hull_lp: function is not polyhedral");
  }
  return lp;
}

bool polyhedral(const SpectralFn& phi) {
  switch (phi.kind) {
    case FnKind::kLinear:
    case FnKind::kMaxComponent:
    case FnKind::kSumKLargest:
      return true;
    case FnKind::kIndicator:
    case FnKind::kSupport:
      return std::holds_alternative<MajorizationHull>(*phi.set) ||
             std::holds_alternative<OrbitUnion>(*phi.set);
    default:
      return false;
  }
}

// Grid search in W (dim <= 3), flagged approximate.
ConjugateResult grid_fallback(const System& sys, const SpectralFn& phi,
                              const std::optional<SpectralSet>& q, const SpecVector& lz,
                              bool restrict_to_range, double tol) {
  const int m = lz.size();
  if (m > 3) throw CapabilityError("conjugate: no exact method and dim W > 3 for the grid");
  double radius = 10.0 * scale_of(lz);
  if (q) {
    if (const auto* h = std::get_if<MajorizationHull>(&*q)) {
      for (const auto& g : h->generators) radius = std::max(radius, 1.5 * scale_of(g));
    }
  }
  const double step = 2.0 * radius / (m == 3 ? 120.0 : 400.0);
  oracle::GridOptions opt;
  opt.probe_unbounded = !q.has_value();
  opt.feasible = [&](const SpecVector& u) {
    if (restrict_to_range && !in_range(sys, u, 1e-12)) return false;
    return !q || member_w(sys, *q, u, tol);
  };
  const SpecVector lo(Eigen::VectorXd::Constant(m, -radius));
  const SpecVector hi(Eigen::VectorXd::Constant(m, radius));
  auto f = [&](const SpecVector& u) { return eval_w(sys, phi, u); };
  const auto g = oracle::grid_conjugate(f, lo, hi, step, lz, opt);
  ConjugateResult out;
  out.exact = false;
  out.value = g.unbounded_suspected ? kInf : g.value;
  if (std::isfinite(out.value)) out.w_maximizer = g.argmax;
  return out;
}

ConjugateResult interval_conjugate(const System& sys, const SpectralFn& phi,
                                   const IntervalSet& s, double lz, bool over_hull) {
  double slope = 0.0, curvature = 0.0;
  switch (phi.kind) {
    case FnKind::kQuadratic: curvature = 1.0; break;
    case FnKind::kLinear: slope = phi.b[0]; break;
    case FnKind::kMaxComponent: slope = 1.0; break;
    case FnKind::kSumKLargest: slope = phi.k >= 1 ? 1.0 : 0.0; break;
    default: throw CapabilityError("conjugate over an interval supports quadratic and linear phi");
  }
  // g(u) = (lz - slope) u - curvature u^2 / 2 on each piece.
  std::vector<Interval> pieces;
  const bool norm = sys.kind() == SystemKind::kNorm;
  Interval base = norm && !s.symmetrized ? s.iv.intersect(Interval::NonNegative()) : s.iv;
  pieces.push_back(base);
  if (norm && (over_hull || s.symmetrized)) {
    pieces.push_back(Interval{-base.hi, -base.lo, base.hi_closed, base.lo_closed});
  }
  auto g = [&](double u) { return (lz - slope) * u - 0.5 * curvature * u * u; };
  ConjugateResult out;
  out.value = -kInf;
  for (const auto& iv : pieces) {
    if (iv.empty()) continue;
    double cand;
    if (curvature > 0.0) {
      cand = std::clamp(lz - slope, iv.lo, iv.hi);
    } else {
      const double a = lz - slope;
      if (a > 0.0) cand = iv.hi;
      else if (a < 0.0) cand = iv.lo;
      else cand = std::isfinite(iv.lo) ? iv.lo : (std::isfinite(iv.hi) ? iv.hi : 0.0);
    }
    if (std::isinf(cand)) {
      out.value = kInf;
      out.w_maximizer.reset();
      return out;
    }
    const double v = g(cand);
    if (v > out.value) {
      out.value = v;
      if (iv.contains(cand)) {
        out.w_maximizer = SpecVector{cand};
      } else {
        out.w_maximizer.reset();
      }
    }
  }
  return out;
}

}  // namespace

SpectralFn SpectralFn::Quadratic() {
  SpectralFn f;
  f.kind = FnKind::kQuadratic;
  f.name = "quadratic";
  return f;
}

SpectralFn SpectralFn::Linear(SpecVector b) {
  SpectralFn f;
  f.kind = FnKind::kLinear;
  f.name = "linear";
  f.b = std::move(b);
  return f;
}

SpectralFn SpectralFn::Zero(int dim_w) {
  SpectralFn f = Linear(SpecVector::Zero(dim_w));
  f.name = "zero";
  return f;
}

SpectralFn SpectralFn::MaxComponent() {
  SpectralFn f;
  f.kind = FnKind::kMaxComponent;
  f.name = "max";
  return f;
}

SpectralFn SpectralFn::MinComponent() {
  return Custom("min", [](const SpecVector& u) { return u.values.minCoeff(); }, true, false);
}

SpectralFn SpectralFn::SumKLargest(int k) {
  if (k < 1) throw DomainError("sum_k_largest needs k >= 1");
  SpectralFn f;
  f.kind = FnKind::kSumKLargest;
  f.name = "sum_k_largest";
  f.k = k;
  return f;
}

SpectralFn SpectralFn::IndicatorOf(SpectralSet q) {
  SpectralFn f;
  f.kind = FnKind::kIndicator;
  f.name = "indicator";
  f.set = std::make_shared<const SpectralSet>(std::move(q));
  return f;
}

SpectralFn SpectralFn::SupportOf(SpectralSet q) {
  SpectralFn f;
  f.kind = FnKind::kSupport;
  f.name = "support";
  f.set = std::make_shared<const SpectralSet>(std::move(q));
  return f;
}

SpectralFn SpectralFn::Custom(std::string name, std::function<double(const SpecVector&)> fn,
                              bool spectral, bool convex) {
  SpectralFn f;
  f.kind = FnKind::kCustom;
  f.name = std::move(name);
  f.custom = std::move(fn);
  f.custom_spectral = spectral;
  f.custom_convex = convex;
  return f;
}

double eval_w(const System& sys, const SpectralFn& phi, const SpecVector& u) {
  check_layout(sys, u);
  switch (phi.kind) {
    case FnKind::kQuadratic:
      return 0.5 * u.values.squaredNorm();
    case FnKind::kLinear:
      if (phi.b.size() != u.size()) throw LayoutError("linear phi: b has the wrong length");
      return inner_w(phi.b, u);
    case FnKind::kMaxComponent:
      return u.values.maxCoeff();
    case FnKind::kSumKLargest: {
      if (phi.k > u.size()) throw DomainError("sum_k_largest: k exceeds dim W");
      Eigen::VectorXd v = u.values;
      std::sort(v.data(), v.data() + v.size(), std::greater<>());
      return v.head(phi.k).sum();
    }
    case FnKind::kIndicator:
      return member_w(sys, *phi.set, u, 1e-9 * scale_of(u)) ? 0.0 : kInf;
    case FnKind::kSupport:
      return support_w(sys, *phi.set, u).value;
    case FnKind::kCustom:
      return phi.custom(u);
  }
  return kInf;
}

double eval_v(const System& sys, const SpectralFn& phi, const Point& x) {
  return eval_w(sys, phi, lambda_of(sys, x));
}

bool is_spectral(const System& sys, const SpectralFn& phi) {
  switch (phi.kind) {
    case FnKind::kQuadratic:
      return true;
    case FnKind::kLinear:
      check_layout(sys, phi.b);
      return linear_is_spectral(sys, phi.b);
    case FnKind::kMaxComponent:
    case FnKind::kSumKLargest:
      return all_sorted_blocks(sys);
    case FnKind::kIndicator:
    case FnKind::kSupport:
      return is_spectral(sys, *phi.set);
    case FnKind::kCustom:
      return phi.custom_spectral;
  }
  return false;
}

bool is_convex(const SpectralFn& phi) {
  switch (phi.kind) {
    case FnKind::kIndicator:
      if (const auto* s = std::get_if<Sublevel>(phi.set.get())) return s->fn.convex;
      if (const auto* u = std::get_if<OrbitUnion>(phi.set.get())) return u->points.size() <= 1;
      return true;
    case FnKind::kCustom:
      return phi.custom_convex;
    default:
      return true;
  }
}

ConjugateResult conjugate(const System& sys, const SpectralFn& phi, const Domain& s,
                          const Point& z, double tol, const ConjugateOptions& options) {
  const SpecVector lz = lambda_of(sys, z);
  const bool restrict = !options.over_spectral_hull;
  ConjugateResult out;

  if (!s.set) {
    if (is_spectral(sys, phi)) {
      if (auto cf = closed_form(sys, phi, lz, tol)) {
        out = *cf;
        if (out.w_maximizer) lift_maximizer(sys, phi, z, *out.w_maximizer, out);
        return out;
      }
    } else if (phi.kind == FnKind::kLinear) {
      // sup over the cone F (or all of W) of <lz - b, u>.
      const SpecVector d = lz - phi.b;
      bool bounded = true;
      if (!restrict) {
        bounded = d.values.cwiseAbs().maxCoeff() <= tol;
      } else {
        std::vector<std::pair<int, int>> ge;
        std::vector<int> nonneg;
        range_rows(sys, 0, ge, nonneg);
        LinearProgram lp;
        lp.num_vars = d.size();
        lp.free.assign(d.size(), true);
        lp.objective = d.values;
        for (auto [i, j] : ge) {
          Eigen::VectorXd r = Eigen::VectorXd::Zero(d.size());
          r(i) = 1.0, r(j) = -1.0;
          lp.add(r, Relation::kGreaterEq, 0.0);
        }
        for (int i : nonneg) {
          Eigen::VectorXd r = Eigen::VectorXd::Zero(d.size());
          r(i) = 1.0;
          lp.add(r, Relation::kGreaterEq, 0.0);
        }
        // Cap the cone so the LP stays bounded; a positive optimum means +inf.
        Eigen::VectorXd cap = Eigen::VectorXd::Zero(d.size());
        for (int i = 0; i < d.size(); ++i) {
          Eigen::VectorXd r = Eigen::VectorXd::Zero(d.size());
          r(i) = 1.0;
          lp.add(r, Relation::kLessEq, 1.0);
          lp.add(r, Relation::kGreaterEq, -1.0);
        }
        bounded = solve_lp(lp).value <= tol;
      }
      out.value = bounded ? 0.0 : kInf;
      if (bounded) lift_maximizer(sys, phi, z, SpecVector::Zero(lz.size()), out);
      return out;
    }
    out = grid_fallback(sys, phi, std::nullopt, lz, restrict, tol);
    if (out.w_maximizer) lift_maximizer(sys, phi, z, *out.w_maximizer, out);
    return out;
  }

  const SpectralSet& q = *s.set;
  if (!is_spectral(sys, q)) {
    throw DomainError("conjugate: the domain must be a spectral set");
  }

  if (const auto* u = std::get_if<OrbitUnion>(&q)) {
    out.value = -kInf;
    std::vector<SpecVector> cands = restrict ? u->points : hull_vertices(sys, q);
    for (const auto& p : cands) {
      const double f = eval_w(sys, phi, p);
      if (!std::isfinite(f)) continue;
      const double v = inner_w(lz, p) - f;
      if (v > out.value) {
        out.value = v;
        out.w_maximizer = p;
      }
    }
    if (out.w_maximizer) lift_maximizer(sys, phi, z, *out.w_maximizer, out);
    return out;
  }

  if (const auto* h = std::get_if<MajorizationHull>(&q)) {
    if (phi.kind == FnKind::kQuadratic && h->generators.size() == 1) {
      const SpecVector u = project_onto_orbit_hull(sys, lz, h->generators.front());
      out.value = inner_w(lz, u) - 0.5 * u.values.squaredNorm();
      lift_maximizer(sys, phi, z, u, out);
      return out;
    }
    if (polyhedral(phi)) {
      const auto verts = hull_vertices(sys, q);
      const LPSolution sol = solve_lp(hull_lp(sys, phi, lz, verts, restrict));
      if (sol.status == LPStatus::kInfeasible) {
        out.value = -kInf;
        return out;
      }
      if (sol.status == LPStatus::kUnbounded) {
        out.value = kInf;
        return out;
      }
      out.value = sol.value;
      const SpecVector u(sol.x.segment(static_cast<int>(verts.size()), lz.size()));
      lift_maximizer(sys, phi, z, u, out);
      return out;
    }
  }

  if (const auto* iv = std::get_if<IntervalSet>(&q)) {
    out = interval_conjugate(sys, phi, *iv, lz[0], !restrict);
    if (out.w_maximizer) lift_maximizer(sys, phi, z, *out.w_maximizer, out);
    return out;
  }

  if (const auto* sub = std::get_if<Sublevel>(&q)) {
    if (phi.kind == FnKind::kQuadratic && sub->fn.name == "euclidean") {
      const double r = std::max(sub->level, 0.0);
      const double len = lz.values.norm();
      const SpecVector u(len <= r ? lz.values : Eigen::VectorXd((r / len) * lz.values));
      out.value = inner_w(lz, u) - 0.5 * u.values.squaredNorm();
      lift_maximizer(sys, phi, z, u, out);
      return out;
    }
    if (phi.kind == FnKind::kLinear && is_spectral(sys, phi)) {
      // lz - b stays in ran(lambda) since b is constant on sorted blocks.
      const SupportValue h = support_w(sys, q, lz - phi.b);
      out.value = h.value;
      out.exact = !h.approximate;
      if (h.argmax) lift_maximizer(sys, phi, z, *h.argmax, out);
      return out;
    }
  }

  out = grid_fallback(sys, phi, q, lz, restrict, tol);
  if (out.w_maximizer) lift_maximizer(sys, phi, z, *out.w_maximizer, out);
  return out;
}

CrossCheckReport conjugate_cross_check(const System& sys, const SpectralFn& phi,
                                       const Domain& s, const Point& z, int samples,
                                       std::uint64_t seed, double tol) {
  const ConjugateResult res = conjugate(sys, phi, s, z, tol);
  CrossCheckReport rep;
  rep.reduced = res.value;
  rep.direct = -kInf;
  const double reach = 2.0 * std::max(1.0, norm_v(sys, z));
  auto score = [&](const Point& x) {
    const double f = eval_v(sys, phi, x);
    if (std::isfinite(f)) rep.direct = std::max(rep.direct, inner_v(sys, z, x) - f);
  };
  for (int i = 0; i < samples; ++i) {
    Stream rng(seed, static_cast<std::uint64_t>(i));
    Point x = s.set ? sample_member(sys, *s.set, rng)
                    : rng.uniform(0.0, reach) * random_point(sys, rng);
    score(x);
    score(align(sys, z, lambda_of(sys, x)));
  }
  if (std::isfinite(rep.reduced)) {
    rep.excess = std::isfinite(rep.direct) ? rep.direct - rep.reduced : 0.0;
    if (res.maximizer) {
      rep.attained = inner_v(sys, z, *res.maximizer) - eval_v(sys, phi, *res.maximizer);
      rep.attain_gap = std::abs(rep.attained - rep.reduced);
      if (s.set) {
        rep.maximizer_in_set =
            member(sys, *s.set, *res.maximizer, 1e-9 * std::max(1.0, norm_v(sys, *res.maximizer)));
      }
    }
  }
  return rep;
}

SubdiffReport subdiff_check(const System& sys, const SpectralFn& phi, const Domain& s,
                            const Point& xbar, const Point& y, double tol) {
  check_layout(sys, y);
  if (s.set && !member(sys, *s.set, xbar, tol)) {
    throw PreconditionError("subdiff_check: xbar is not in S");
  }
  const SpecVector lx = lambda_of(sys, xbar);
  const double fx = eval_w(sys, phi, lx);
  if (!std::isfinite(fx)) throw PreconditionError("subdiff_check: xbar is outside dom Phi");
  const SpecVector ly = lambda_of(sys, y);
  const ConjugateResult conj = conjugate(sys, phi, s, y, tol);
  SubdiffReport rep;
  rep.fenchel_gap = std::isfinite(conj.value) ? fx + conj.value - inner_w(lx, ly) : kInf;
  rep.fenchel_ok = std::abs(rep.fenchel_gap) <= tol;
  rep.commutation_gap = inner_v(sys, xbar, y) - inner_w(lx, ly);
  rep.commutes = std::abs(rep.commutation_gap) <= tol;
  return rep;
}

SubdiffAudit subdiff_audit(const System& sys, const SpectralFn& phi, const Domain& s,
                           const Point& xbar, const Point& y, int samples, std::uint64_t seed) {
  const double fx = eval_v(sys, phi, xbar);
  if (!std::isfinite(fx)) throw PreconditionError("subdiff_audit: xbar is outside dom Phi");
  SubdiffAudit audit;
  audit.worst_slack = kInf;
  const double scale = std::max(1.0, norm_v(sys, xbar));
  for (int i = 0; i < samples; ++i) {
    Stream rng(seed, static_cast<std::uint64_t>(i));
    Point x;
    switch (i % 4) {
      case 0: x = xbar + (1e-3 * scale) * random_point(sys, rng); break;
      case 1: x = xbar + (0.1 * scale) * random_point(sys, rng); break;
      case 2: x = sample_orbit(sys, xbar, rng); break;
      default:
        x = s.set ? sample_member(sys, *s.set, rng) : xbar + scale * random_point(sys, rng);
    }
    if (s.set && !member(sys, *s.set, x, 0.0)) continue;
    const double f = eval_v(sys, phi, x);
    if (!std::isfinite(f)) continue;
    const double slack = f - fx - inner_v(sys, y, x - xbar);
    ++audit.samples;
    if (slack < audit.worst_slack) {
      audit.worst_slack = slack;
      audit.witness = x;
    }
  }
  if (audit.samples == 0) audit.worst_slack = 0.0;
  return audit;
}

Point subdiff_construct(const System& sys, const SpectralFn& phi, const Point& xbar,
                        const SpecVector& v, double tol) {
  check_layout(sys, xbar);
  check_layout(sys, v);
  if (!in_range(sys, v, range_tol(v))) {
    throw PreconditionError("subdiff_construct: v must be given by its ran(lambda) representative");
  }
  if (!is_spectral(sys, phi)) throw PreconditionError("subdiff_construct: phi is not spectral");
  const SpecVector lx = lambda_of(sys, xbar);
  const double fx = eval_w(sys, phi, lx);
  if (!std::isfinite(fx)) throw PreconditionError("subdiff_construct: xbar is outside dom Phi");
  const double conj = conjugate(sys, phi, Domain::All(), lift(sys, v), tol).value;
  const double gap = std::isfinite(conj) ? fx + conj - inner_w(lx, v) : kInf;
  if (!(std::abs(gap) <= tol)) {
    throw PreconditionError("subdiff_construct: v is not a subgradient of phi at lambda(xbar)");
  }
  return align(sys, xbar, v);
}

NormalConeReport normal_cone_commutation(const System& sys, const SpectralSet& q,
                                         const Point& xbar, const Point& d, double tol) {
  const auto* sub = std::get_if<Sublevel>(&q);
  if (!std::holds_alternative<MajorizationHull>(q) && !(sub && sub->fn.convex)) {
    throw DomainError("normal_cone_commutation needs a compact convex spectral set");
  }
  if (!member(sys, q, xbar, tol)) throw PreconditionError("normal_cone_commutation: xbar not in set");
  NormalConeReport rep;
  rep.support = support(sys, q, d).value;
  rep.inner = inner_v(sys, d, xbar);
  rep.normal = rep.inner >= rep.support - tol;
  rep.commutation_slack = std::abs(commutation_gap(sys, d, xbar));
  rep.commutes = rep.commutation_slack <= tol;
  return rep;
}

double convexity_violation(const System& sys, const SpectralFn& phi, const Point& x,
                           const Point& y, double t) {
  return eval_v(sys, phi, t * x + (1.0 - t) * y) - t * eval_v(sys, phi, x) -
         (1.0 - t) * eval_v(sys, phi, y);
}

ConvexityReport convexity_probe(const System& sys, const SpectralFn& phi, int samples,
                                std::uint64_t seed) {
  ConvexityReport rep;
  const System red = reduced_system(sys);
  const bool from_set = phi.kind == FnKind::kIndicator;
  for (int i = 0; i < samples; ++i) {
    Stream rng(seed, static_cast<std::uint64_t>(i));
    const Point x = from_set ? sample_member(sys, *phi.set, rng) : random_point(sys, rng);
    const Point y = from_set ? sample_member(sys, *phi.set, rng) : random_point(sys, rng);
    const double t = rng.uniform();
    const double fx = eval_v(sys, phi, x), fy = eval_v(sys, phi, y);
    if (std::isfinite(fx) && std::isfinite(fy)) {
      const double v = convexity_violation(sys, phi, x, y, t);
      if (v > rep.max_violation_v) {
        rep.max_violation_v = v;
        rep.x = x;
        rep.y = y;
        rep.t = t;
      }
    }
    const SpecVector u = from_set ? lambda_of(sys, x) : SpecVector(rng.normal_vector(sys.dim_w()));
    const SpecVector w = from_set ? lambda_of(sys, y) : SpecVector(rng.normal_vector(sys.dim_w()));
    const double fu = eval_w(sys, phi, u), fw = eval_w(sys, phi, w);
    if (std::isfinite(fu) && std::isfinite(fw)) {
      const double v = eval_w(sys, phi, t * u + (1.0 - t) * w) - t * fu - (1.0 - t) * fw;
      rep.max_violation_w = std::max(rep.max_violation_w, v);
    }
    ++rep.samples;
  }
  return rep;
}

}  // namespace ftvn
