#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "ftvn/point.h"
#include "ftvn/spectral_sets.h"
#include "ftvn/system.h"

namespace ftvn {

enum class FnKind { kQuadratic, kLinear, kMaxComponent, kSumKLargest, kIndicator, kSupport, kCustom };

// phi : W -> R u {+inf}; Phi = phi o lambda on V.
struct SpectralFn {
  FnKind kind = FnKind::kQuadratic;
  std::string name;
  SpecVector b;                        // Linear
  int k = 1;                           // SumKLargest
  std::shared_ptr<const SpectralSet> set;  // Indicator, Support
  std::function<double(const SpecVector&)> custom;
  bool custom_spectral = false;
  bool custom_convex = false;

  static SpectralFn Quadratic();
  static SpectralFn Linear(SpecVector b);
  static SpectralFn Zero(int dim_w);
  static SpectralFn MaxComponent();
  static SpectralFn MinComponent();  // custom, concave
  static SpectralFn SumKLargest(int k);
  static SpectralFn IndicatorOf(SpectralSet q);
  static SpectralFn SupportOf(SpectralSet q);
  static SpectralFn Custom(std::string name, std::function<double(const SpecVector&)> f,
                           bool spectral, bool convex);
};

// phi(u); +inf outside the effective domain.
double eval_w(const System& sys, const SpectralFn& phi, const SpecVector& u);
// Phi(x) = phi(lambda x).
double eval_v(const System& sys, const SpectralFn& phi, const Point& x);

// phi o mu = phi (constant vectors for Linear on sorted blocks, b = 0 on norm blocks).
bool is_spectral(const System& sys, const SpectralFn& phi);
bool is_convex(const SpectralFn& phi);

// Where the conjugate is taken: the whole space or lambda^{-1}(Q).
struct Domain {
  std::optional<SpectralSet> set;  // empty means all of V
  static Domain All() { return {}; }
  static Domain Of(SpectralSet q) { return {std::move(q)}; }
};

struct ConjugateOptions {
  // Maximize over [lambda(S)] instead of lambda(S) (the second conjugate formula).
  bool over_spectral_hull = false;
};

struct ConjugateResult {
  double value = 0.0;  // +inf when unbounded, -inf over the empty set
  std::optional<Point> maximizer;
  std::optional<SpecVector> w_maximizer;
  bool exact = true;
};

// (phi o lambda)*_S(z) = phi*_{lambda(S)}(lambda z), computed in W.
ConjugateResult conjugate(const System& sys, const SpectralFn& phi, const Domain& s,
                          const Point& z, double tol, const ConjugateOptions& options = {});

struct CrossCheckReport {
  double reduced = 0.0;   // W-side value
  double direct = 0.0;    // best sampled <z,x> - Phi(x) over S in V
  double attained = 0.0;  // <z,x*> - Phi(x*) at the lifted maximizer
  double excess = 0.0;    // direct - reduced
  double attain_gap = 0.0;
  bool maximizer_in_set = true;
  bool pass(double tol) const {
    return excess <= tol && attain_gap <= tol && maximizer_in_set;
  }
};
CrossCheckReport conjugate_cross_check(const System& sys, const SpectralFn& phi,
                                       const Domain& s, const Point& z, int samples,
                                       std::uint64_t seed, double tol);

struct SubdiffReport {
  double fenchel_gap = 0.0;      // phi(lx) + phi*_{lambda S}(ly) - <lx, ly>
  double commutation_gap = 0.0;  // <xbar,y> - <lambda xbar, lambda y>
  bool fenchel_ok = false;
  bool commutes = false;
  bool holds() const { return fenchel_ok && commutes; }
};
// y in the S-subdifferential of Phi at xbar, via the W-side Fenchel equality
// and commutation. Throws PreconditionError unless xbar is in S cap dom Phi.
SubdiffReport subdiff_check(const System& sys, const SpectralFn& phi, const Domain& s,
                            const Point& xbar, const Point& y, double tol);

struct SubdiffAudit {
  int samples = 0;
  double worst_slack = 0.0;  // min over x of Phi(x) - Phi(xbar) - <y, x - xbar>
  std::optional<Point> witness;
};
// Subgradient inequality on sampled x in S near xbar, across its orbit, and
// at random scales.
SubdiffAudit subdiff_audit(const System& sys, const SpectralFn& phi, const Domain& s,
                           const Point& xbar, const Point& y, int samples, std::uint64_t seed);

// y = align(xbar, v) for a W-side subgradient v in ran lambda.
Point subdiff_construct(const System& sys, const SpectralFn& phi, const Point& xbar,
                        const SpecVector& v, double tol);

struct NormalConeReport {
  bool normal = false;
  double support = 0.0;
  double inner = 0.0;
  double commutation_slack = 0.0;
  bool commutes = false;
};
NormalConeReport normal_cone_commutation(const System& sys, const SpectralSet& q,
                                         const Point& xbar, const Point& d, double tol);

struct ConvexityReport {
  int samples = 0;
  double max_violation_v = 0.0;  // Phi(tx+(1-t)y) - t Phi(x) - (1-t) Phi(y)
  double max_violation_w = 0.0;  // same for phi on W
  std::optional<Point> x, y;
  double t = 0.0;
};
ConvexityReport convexity_probe(const System& sys, const SpectralFn& phi, int samples,
                                std::uint64_t seed);
double convexity_violation(const System& sys, const SpectralFn& phi, const Point& x,
                           const Point& y, double t);

}  // namespace ftvn
