#include "ftvn/spectral_sets.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ftvn/core.h"
#include "ftvn/error.h"
#include "ftvn/majorization.h"
#include "ftvn/oracle.h"
#include "ftvn/systems.h"

namespace ftvn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double scale_of(const SpecVector& v) {
  return v.size() ? std::max(1.0, v.values.cwiseAbs().maxCoeff()) : 1.0;
}

std::vector<SpecVector> canonical_unique(const System& sys, const std::vector<SpecVector>& pts) {
  std::vector<SpecVector> out;
  for (const auto& p : pts) {
    check_layout(sys, p);
    SpecVector m = mu_of(sys, p);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const SpecVector& q) {
      return max_abs_diff(q, m) <= 1e-12 * scale_of(m);
    });
    if (!seen) out.push_back(std::move(m));
  }
  return out;
}

const SpecVector& single_generator(const SpectralSet& q, const char* op) {
  const auto* hull = std::get_if<MajorizationHull>(&q);
  if (!hull || hull->generators.size() != 1) {
    throw DomainError(std::string(op) + " needs a single-orbit majorization hull");
  }
  return hull->generators.front();
}

// Largest t with f(t d) <= level, assuming f(0) <= level and convexity along
// the ray. Returns +inf past 1e8.
double ray_extent(const LevelFunction& fn, double level, const SpecVector& d) {
  double hi = 1.0;
  while (fn.eval(hi * d) <= level) {
    hi *= 2.0;
    if (hi > 1e8) return kInf;
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (fn.eval(mid * d) <= level ? lo : hi) = mid;
  }
  return lo;
}

double sublevel_at_zero(const Sublevel& s, int dim) { return s.fn.eval(SpecVector::Zero(dim)); }

Point trace_free_direction(const System& sys, Stream& rng) {
  Point d = random_point(sys, rng);
  switch (sys.kind()) {
    case SystemKind::kSorted:
      d.coords.array() -= d.coords.mean();
      break;
    case SystemKind::kSymmetric: {
      const int n = sys.order();
      double tr = 0.0;
      for (int i = 0; i < n; ++i) tr += d[packed_index(n, i, i)];
      for (int i = 0; i < n; ++i) d[packed_index(n, i, i)] -= tr / n;
      break;
    }
    case SystemKind::kNorm:
      break;
    case SystemKind::kProduct: {
      Point a = trace_free_direction(sys.left(), rng);
      Point b = trace_free_direction(sys.right(), rng);
      d = pair_point(a, b);
      break;
    }
  }
  return d;
}

bool is_norm_line(const System& sys) { return sys.kind() == SystemKind::kNorm; }

}  // namespace

LevelFunction max_abs_level() {
  LevelFunction f;
  f.name = "max_abs";
  f.convex = true;
  f.eval = [](const SpecVector& u) { return u.size() ? u.values.cwiseAbs().maxCoeff() : 0.0; };
  f.support = [](const SpecVector& c, double level) { return level * c.values.cwiseAbs().sum(); };
  return f;
}

LevelFunction euclidean_level() {
  LevelFunction f;
  f.name = "euclidean";
  f.convex = true;
  f.eval = [](const SpecVector& u) { return u.values.norm(); };
  f.support = [](const SpecVector& c, double level) { return level * c.values.norm(); };
  return f;
}

LevelFunction sum_abs_level() {
  LevelFunction f;
  f.name = "sum_abs";
  f.convex = true;
  f.eval = [](const SpecVector& u) { return u.values.cwiseAbs().sum(); };
  f.support = [](const SpecVector& c, double level) {
    return c.size() ? level * c.values.cwiseAbs().maxCoeff() : 0.0;
  };
  return f;
}

SpectralSet make_orbit_union(const System& sys, const std::vector<SpecVector>& points) {
  return OrbitUnion{canonical_unique(sys, points)};
}

SpectralSet make_hull(const System& sys, const std::vector<SpecVector>& generators) {
  if (generators.empty()) throw DomainError("majorization hull needs at least one generator");
  return MajorizationHull{canonical_unique(sys, generators)};
}

SpectralSet make_sublevel(LevelFunction fn, double level) {
  if (!fn.eval) throw DomainError("sublevel set needs a function");
  return Sublevel{std::move(fn), level};
}

SpectralSet make_interval(const Interval& iv) { return IntervalSet{iv, false}; }

std::string variant_name(const SpectralSet& q) {
  switch (q.index()) {
    case 0: return "orbit_union";
    case 1: return "maj_hull";
    case 2: return "sublevel";
    default: return "interval";
  }
}

void check_set(const System& sys, const SpectralSet& q) {
  if (const auto* u = std::get_if<OrbitUnion>(&q)) {
    for (const auto& p : u->points) check_layout(sys, p);
  } else if (const auto* h = std::get_if<MajorizationHull>(&q)) {
    for (const auto& p : h->generators) check_layout(sys, p);
  } else if (std::holds_alternative<IntervalSet>(q)) {
    if (sys.dim_w() != 1) throw DomainError("interval sets need a one-dimensional W");
  }
}

bool is_spectral(const System& sys, const SpectralSet& q) {
  check_set(sys, q);
  switch (q.index()) {
    case 0:
    case 1:
      return true;
    case 2: {
      const auto& s = std::get<Sublevel>(q);
      for (int i = 0; i < 64; ++i) {
        Stream rng(0x5eedULL, static_cast<std::uint64_t>(i));
        const SpecVector u(rng.normal_vector(sys.dim_w()));
        const double a = s.fn.eval(u), b = s.fn.eval(mu_of(sys, u));
        if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)})) return false;
      }
      return true;
    }
    default: {
      const auto& s = std::get<IntervalSet>(q);
      if (s.symmetrized || !is_norm_line(sys) || s.iv.empty()) return true;
      return s.iv.lo == -s.iv.hi && s.iv.lo_closed == s.iv.hi_closed;
    }
  }
}

bool member_w(const System& sys, const SpectralSet& q, const SpecVector& u, double tol) {
  check_set(sys, q);
  check_layout(sys, u);
  switch (q.index()) {
    case 0: {
      const SpecVector m = mu_of(sys, u);
      for (const auto& p : std::get<OrbitUnion>(q).points)
        if (max_abs_diff(m, p) <= tol) return true;
      return false;
    }
    case 1: {
      const auto& gens = std::get<MajorizationHull>(q).generators;
      for (const auto& g : gens)
        if (reduced_majorized(sys, u, g, tol).holds) return true;
      if (gens.size() == 1) return false;
      if (sys.dim_w() > 5) {
        throw CapabilityError("hull membership with several generators needs dim W <= 5");
      }
      std::vector<SpecVector> vertices;
      for (const auto& g : gens) {
        auto v = orbit_vertices(sys, g);
        vertices.insert(vertices.end(), v.begin(), v.end());
      }
      return oracle::conv_member_lp(vertices, u, tol).feasible;
    }
    case 2: {
      const auto& s = std::get<Sublevel>(q);
      return s.fn.eval(u) <= s.level + tol;
    }
    default: {
      const auto& s = std::get<IntervalSet>(q);
      return s.iv.contains(u[0]) || (s.symmetrized && s.iv.contains(-u[0]));
    }
  }
}

bool member(const System& sys, const SpectralSet& q, const Point& x, double tol) {
  return member_w(sys, q, lambda_of(sys, x), tol);
}

SpectralSet lambda_image(const System& sys, const SpectralSet& q) {
  check_set(sys, q);
  if (std::holds_alternative<Sublevel>(q)) {
    throw CapabilityError("lambda_image has no exact form for sublevel sets");
  }
  if (const auto* s = std::get_if<IntervalSet>(&q)) {
    if (!is_norm_line(sys)) return q;
    return IntervalSet{s->iv.intersect(Interval::NonNegative()), false};
  }
  return q;
}

SpectralSet spectralize(const System& sys, const SpectralSet& q) {
  check_set(sys, q);
  if (std::holds_alternative<Sublevel>(q)) {
    throw CapabilityError("spectralize has no exact form for sublevel sets");
  }
  if (const auto* s = std::get_if<IntervalSet>(&q)) {
    if (!is_norm_line(sys)) return q;
    const Interval r = s->iv.intersect(Interval::NonNegative());
    if (r.empty()) return OrbitUnion{};
    if (r.lo == r.hi) return OrbitUnion{{SpecVector{r.lo}}};
    return IntervalSet{r, true};
  }
  return q;
}

SpectralSet spectral_hull_points(const System& sys, const std::vector<Point>& pts) {
  if (pts.empty()) throw PreconditionError("spectral_hull_points: empty point list");
  std::vector<SpecVector> spectra;
  for (const auto& p : pts) spectra.push_back(lambda_of(sys, p));
  return make_orbit_union(sys, spectra);
}

CoreResult core_member(const System& sys, const std::function<bool(const Point&)>& in_s,
                       const Point& x, int probes, std::uint64_t seed) {
  check_layout(sys, x);
  if (probes < 1) throw PreconditionError("core_member: probes must be >= 1");
  CoreResult out;
  out.probes_used = 1;
  if (!in_s(x)) {
    out.verdict = CoreVerdict::kRefuted;
    out.witness = x;
    return out;
  }
  if (sys.kind() == SystemKind::kSorted && sys.order() <= 7) {
    for (const auto& v : orbit_vertices(sys, SpecVector(x.coords))) {
      ++out.probes_used;
      if (!in_s(Point(v.values))) {
        out.verdict = CoreVerdict::kRefuted;
        out.witness = Point(v.values);
        return out;
      }
    }
    out.verdict = CoreVerdict::kInCore;
    return out;
  }
  for (int i = 0; i < probes; ++i) {
    Stream rng(seed, static_cast<std::uint64_t>(i));
    Point y = sample_orbit(sys, x, rng);
    ++out.probes_used;
    if (!in_s(y)) {
      out.verdict = CoreVerdict::kRefuted;
      out.witness = std::move(y);
      return out;
    }
  }
  out.verdict = CoreVerdict::kInconclusive;
  return out;
}

SupportValue support_w(const System& sys, const SpectralSet& q, const SpecVector& w) {
  check_set(sys, q);
  const SpecVector c = mu_of(sys, w);
  SupportValue out;
  switch (q.index()) {
    case 0:
    case 1: {
      const auto& pts = q.index() == 0 ? std::get<OrbitUnion>(q).points
                                       : std::get<MajorizationHull>(q).generators;
      out.value = -kInf;
      for (const auto& p : pts) {
        const double v = inner_w(c, p);
        if (v > out.value) {
          out.value = v;
          out.argmax = p;
        }
      }
      return out;
    }
    case 2: {
      const auto& s = std::get<Sublevel>(q);
      if (s.fn.support) {
        out.value = s.fn.support(c, s.level);
        return out;
      }
      const int dim = sys.dim_w();
      if (!(sublevel_at_zero(s, dim) <= s.level)) {
        throw CapabilityError("support: sublevel set must contain the origin");
      }
      out.approximate = true;
      out.value = -kInf;
      auto score = [&](const SpecVector& d) {
        const double t = ray_extent(s.fn, s.level, d);
        const double dot = inner_w(c, d);
        if (std::isinf(t) && dot > 0.0) throw DomainError("support: unbounded set");
        return std::isinf(t) ? 0.0 : t * dot;
      };
      for (int start = 0; start < 20; ++start) {
        Stream rng(0x50ULL, static_cast<std::uint64_t>(start));
        SpecVector d = start == 0 && c.values.norm() > 0 ? SpecVector(c.values.normalized())
                                                         : SpecVector(rng.normal_vector(dim).normalized());
        double best = score(d);
        for (int step = 0; step < 200; ++step) {
          const double radius = 0.5 * std::pow(0.97, step);
          SpecVector trial(d.values + radius * rng.normal_vector(dim));
          if (trial.values.norm() == 0.0) continue;
          trial.values.normalize();
          const double v = score(trial);
          if (v > best) best = v, d = trial;
        }
        if (best > out.value) {
          out.value = best;
          out.argmax = SpecVector(ray_extent(s.fn, s.level, d) * d.values);
        }
      }
      return out;
    }
    default: {
      const auto& s = std::get<IntervalSet>(q);
      if (is_norm_line(sys)) {
        const Interval r = s.symmetrized ? s.iv : s.iv.intersect(Interval::NonNegative());
        if (r.empty()) {
          out.value = -kInf;
          return out;
        }
        if (c[0] == 0.0) return out;
        if (std::isinf(r.hi)) throw DomainError("support: unbounded set");
        out.value = c[0] * r.hi;
        if (r.hi_closed) out.argmax = SpecVector{r.hi};
        return out;
      }
      if (s.iv.empty()) {
        out.value = -kInf;
        return out;
      }
      if (c[0] == 0.0) return out;
      const double end = c[0] > 0.0 ? s.iv.hi : s.iv.lo;
      if (std::isinf(end)) throw DomainError("support: unbounded set");
      out.value = c[0] * end;
      return out;
    }
  }
}

SupportValue support(const System& sys, const SpectralSet& q, const Point& c) {
  return support_w(sys, q, lambda_of(sys, c));
}

bool interior_member(const System& sys, const SpectralSet& q, const Point& x, double tol) {
  const auto* s = std::get_if<Sublevel>(&q);
  if (!s || !s->fn.convex) {
    throw CapabilityError("interior_member needs a convex sublevel set");
  }
  if (!(sublevel_at_zero(*s, sys.dim_w()) < s->level)) {
    throw CapabilityError("interior_member needs a Slater point (f(0) < level)");
  }
  return s->fn.eval(lambda_of(sys, x)) <= s->level - tol;
}

Point sample_member(const System& sys, const SpectralSet& q, Stream& rng) {
  check_set(sys, q);
  const System red = reduced_system(sys);
  switch (q.index()) {
    case 0: {
      const auto& pts = std::get<OrbitUnion>(q).points;
      if (pts.empty()) throw DomainError("sample_member: empty set");
      return sample_orbit(sys, lift(sys, pts[rng.below(static_cast<int>(pts.size()))]), rng);
    }
    case 1: {
      const auto& gens = std::get<MajorizationHull>(q).generators;
      const int m = 1 + rng.below(sys.dim_w() + 1);
      Eigen::VectorXd w = Eigen::VectorXd::Zero(sys.dim_w());
      double total = 0.0;
      for (int i = 0; i < m; ++i) {
        const SpecVector& g = gens[rng.below(static_cast<int>(gens.size()))];
        const double theta = -std::log(std::max(rng.uniform(), 1e-300));
        w += theta * sample_orbit(red, Point(g.values), rng).coords;
        total += theta;
      }
      const SpecVector u = mu_of(sys, SpecVector(w / total));
      return sample_orbit(sys, lift(sys, u), rng);
    }
    case 2: {
      const auto& s = std::get<Sublevel>(q);
      const int dim = sys.dim_w();
      if (!(sublevel_at_zero(s, dim) <= s.level)) {
        throw CapabilityError("sample_member: sublevel set must contain the origin");
      }
      SpecVector d(rng.normal_vector(dim));
      double t = ray_extent(s.fn, s.level, d);
      if (std::isinf(t)) t = 10.0;
      const SpecVector u((t * std::pow(rng.uniform(), 1.0 / dim)) * d.values);
      return sample_orbit(sys, lift(sys, mu_of(sys, u)), rng);
    }
    default: {
      const auto& s = std::get<IntervalSet>(q);
      Interval r = is_norm_line(sys) && !s.symmetrized
                       ? s.iv.intersect(Interval::NonNegative())
                       : s.iv;
      if (r.empty()) throw DomainError("sample_member: empty set");
      const double lo = std::isinf(r.lo) ? r.hi - 10.0 : r.lo;
      const double hi = std::isinf(r.hi) ? lo + 10.0 : r.hi;
      double t = lo + (hi - lo) * rng.uniform();
      if (!r.contains(t)) t = 0.5 * (lo + hi);
      if (!is_norm_line(sys)) return Point{t};
      return sample_orbit(sys, lift(sys, SpecVector{t}), rng);
    }
  }
}

MinkowskiReport minkowski_check(const System& sys, const SpectralSet& q1, const SpectralSet& q2,
                                int trials, std::uint64_t seed, double tol) {
  const SpecVector p1 = single_generator(q1, "minkowski_check");
  const SpecVector p2 = single_generator(q2, "minkowski_check");
  check_layout(sys, p1);
  check_layout(sys, p2);
  MinkowskiReport rep;
  rep.sum = make_hull(sys, {p1 + p2});
  const SpecVector& ps = std::get<MajorizationHull>(rep.sum).generators.front();
  const auto v1 = orbit_vertices(sys, p1);
  const auto v2 = orbit_vertices(sys, p2);
  const auto vs = orbit_vertices(sys, ps);
  auto brute = [](const std::vector<SpecVector>& verts, const SpecVector& d) {
    double best = -kInf;
    for (const auto& v : verts) best = std::max(best, inner_w(d, v));
    return best;
  };
  for (int i = 0; i < trials; ++i) {
    Stream rng(seed, static_cast<std::uint64_t>(i));
    const Point c = random_point(sys, rng);
    const Point x1 = align(sys, c, p1), x2 = align(sys, c, p2);
    const double h = support(sys, rep.sum, c).value;
    rep.max_v_slack = std::max(rep.max_v_slack, std::abs(inner_v(sys, c, x1 + x2) - h));

    const SpecVector d(rng.normal_vector(sys.dim_w()));
    rep.max_w_slack =
        std::max(rep.max_w_slack, std::abs(brute(vs, d) - brute(v1, d) - brute(v2, d)));

    const Point y1 = sample_member(sys, q1, rng), y2 = sample_member(sys, q2, rng);
    if (!member(sys, rep.sum, y1 + y2, tol)) ++rep.forward_failures;
    ++rep.trials;
  }
  return rep;
}

ExtremeVerdict extreme_refute(const System& sys, const SpectralSet& q, const Point& candidate,
                              int probes, std::uint64_t seed) {
  const SpecVector& p = single_generator(q, "extreme_refute");
  check_layout(sys, candidate);
  const double tight = 1e-12 * scale_of(p);
  if (!member(sys, q, candidate, 1e-9 * scale_of(p))) {
    throw PreconditionError("extreme_refute: candidate is not in the set");
  }
  ExtremeVerdict out;
  auto try_pair = [&](const Point& a) {
    const Point b = 2.0 * candidate - a;
    ++out.probes_used;
    if ((a.coords - candidate.coords).cwiseAbs().maxCoeff() <= tight) return false;
    if (!member(sys, q, a, tight) || !member(sys, q, b, tight)) return false;
    out.refuted = true;
    out.a = a;
    out.b = b;
    return true;
  };

  // Reflections of orbit points through the candidate.
  if (sys.kind() == SystemKind::kSorted && sys.order() <= 8) {
    auto verts = orbit_vertices(sys, p);
    for (auto it = verts.rbegin(); it != verts.rend() && out.probes_used < probes; ++it)
      if (try_pair(Point(it->values))) return out;
  } else {
    const Point base = lift(sys, p);
    for (int i = 0; i < probes / 2 && out.probes_used < probes; ++i) {
      Stream rng(seed, static_cast<std::uint64_t>(i));
      if (try_pair(sample_orbit(sys, base, rng))) return out;
    }
  }

  // Short segments through the candidate along directions that keep the trace.
  const double reach = std::max(1.0, norm_v(sys, candidate));
  for (int i = 0; out.probes_used < probes; ++i) {
    Stream rng(seed ^ 0xa5a5a5a5ULL, static_cast<std::uint64_t>(i));
    Point d = trace_free_direction(sys, rng);
    const double len = norm_v(sys, d);
    if (len == 0.0) {
      ++out.probes_used;
      continue;
    }
    const double t = (i % 2 == 0 ? 1e-2 : 1e-4) * reach / len;
    if (try_pair(candidate + t * d)) return out;
  }
  return out;
}

bool certify_extreme_lp(const System& sys, const SpectralSet& q, const Point& candidate) {
  const SpecVector& p = single_generator(q, "certify_extreme_lp");
  if (sys.kind() != SystemKind::kSorted || sys.order() > 5) {
    throw CapabilityError("certify_extreme_lp supports sorted:n with n <= 5");
  }
  check_layout(sys, candidate);
  const SpecVector cand(candidate.coords);
  const double tight = 1e-12 * scale_of(p);
  std::vector<SpecVector> others;
  bool is_vertex = false;
  for (auto& v : orbit_vertices(sys, p)) {
    if (max_abs_diff(v, cand) <= tight) {
      is_vertex = true;
    } else {
      others.push_back(std::move(v));
    }
  }
  if (!is_vertex) return false;
  if (others.empty()) return true;
  return !oracle::conv_member_lp(others, cand, tight).feasible;
}

TransferReport transfer_suite(const System& sys, const SpectralSet& q, int combos, int probes,
                              std::uint64_t seed, double tol) {
  check_set(sys, q);
  const auto* sub = std::get_if<Sublevel>(&q);
  if (!std::holds_alternative<MajorizationHull>(q) && !(sub && sub->fn.convex)) {
    throw DomainError("transfer_suite needs a majorization hull or a convex sublevel set");
  }
  TransferReport rep;
  for (int i = 0; i < combos; ++i) {
    Stream rng(seed, static_cast<std::uint64_t>(i));
    const Point x = sample_member(sys, q, rng);
    const Point y = sample_member(sys, q, rng);
    const double t = rng.uniform();
    const Point z = t * x + (1.0 - t) * y;
    const SpecVector lz = lambda_of(sys, z);
    double excess = 0.0;
    if (sub) {
      excess = sub->fn.eval(lz) - sub->level;
    } else {
      double best = -kInf;
      for (const auto& g : std::get<MajorizationHull>(q).generators)
        best = std::max(best, reduced_majorized(sys, lz, g, tol).worst_slack);
      excess = -best;
    }
    rep.worst_convex_excess = std::max(rep.worst_convex_excess, excess);
    ++rep.convex_trials;
    if (!member_w(sys, q, lz, tol)) ++rep.convex_failures;
  }

  if (!sub || !(sublevel_at_zero(*sub, sys.dim_w()) < sub->level)) return rep;

  enum Where { kInterior, kBoundary, kExterior };
  for (int i = 0; i < probes; ++i) {
    Stream rng(seed ^ 0x1f2e3d4cULL, static_cast<std::uint64_t>(i));
    Point x0 = random_point(sys, rng);
    const double delta = rng.uniform(1e-3, 0.5);
    const double ratio = i % 3 == 0 ? 1.0 - delta : (i % 3 == 1 ? 1.0 : 1.0 + delta);
    const double target = sub->level * ratio;
    auto f = [&](double s) { return sub->fn.eval(lambda_of(sys, s * x0)); };
    double hi = 1.0;
    while (f(hi) < target && hi < 1e12) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) < target ? lo : hi) = mid;
    }
    const Point x = hi * x0;

    Where in_w = interior_member(sys, q, x, tol) ? kInterior
                 : member(sys, q, x, tol)         ? kBoundary
                                                  : kExterior;
    Where in_v = kExterior;
    if (member(sys, q, x, tol)) {
      in_v = kInterior;
      if (!member(sys, q, (1.0 + 1e-6) * x, tol)) {
        in_v = kBoundary;
      } else {
        const double rho = 1e-6 * std::max(1.0, norm_v(sys, x));
        for (int k = 0; k < 16 && in_v == kInterior; ++k) {
          Point d = random_point(sys, rng);
          d = (rho / norm_v(sys, d)) * d;
          if (!member(sys, q, x + d, tol)) in_v = kBoundary;
        }
      }
    }
    ++rep.probe_points;
    if (in_v != in_w) ++rep.classification_disagreements;
  }
  return rep;
}

}  // namespace ftvn
