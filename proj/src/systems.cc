#include "ftvn/systems.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "ftvn/core.h"
#include "ftvn/error.h"

namespace ftvn {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  System parse() {
    System sys = parse_spec();
    if (pos_ != text_.size()) fail("trailing characters");
    return sys;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("bad system descriptor '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_) + ": " + what);
  }

  bool consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (pos_ >= text_.size() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  int number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a positive integer");
    if (pos_ - start > 6) fail("dimension too large");
    int n = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (n < 1) fail("dimension must be >= 1");
    return n;
  }

  System parse_spec() {
    if (consume("product(")) {
      System left = parse_spec();
      expect(',');
      System right = parse_spec();
      expect(')');
      return System::Product(left, right);
    }
    if (consume("sorted:")) return System::Sorted(number());
    if (consume("sym:")) return System::Symmetric(number());
    if (consume("norm:")) return System::Norm(number());
    if (consume("soc:")) return System::Product(System::Sorted(1), System::Norm(number()));
    fail("unknown system kind");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void check_w(const System& sys, const SpecVector& w) { check_layout(sys, w); }

}  // namespace

System build_system(std::string_view spec) { return Parser(spec).parse(); }

System reduced_system(const System& sys) {
  switch (sys.kind()) {
    case SystemKind::kSorted:
      return sys;
    case SystemKind::kSymmetric:
      return System::Sorted(sys.order());
    case SystemKind::kNorm:
      return System::Norm(1);
    case SystemKind::kProduct:
      return System::Product(reduced_system(sys.left()), reduced_system(sys.right()));
  }
  throw LayoutError("unknown system kind");
}

SpecVector mu_of(const System& sys, const SpecVector& w) {
  check_w(sys, w);
  return lambda_of(reduced_system(sys), Point(w.values));
}

bool in_range(const System& sys, const SpecVector& q, double tol) {
  check_w(sys, q);
  switch (sys.kind()) {
    case SystemKind::kSorted:
    case SystemKind::kSymmetric:
      for (int i = 0; i + 1 < q.size(); ++i)
        if (q[i + 1] > q[i] + tol) return false;
      return true;
    case SystemKind::kNorm:
      return q[0] >= -tol;
    case SystemKind::kProduct: {
      auto [a, b] = split(sys, q);
      return in_range(sys.left(), a, tol) && in_range(sys.right(), b, tol);
    }
  }
  return false;
}

bool in_dual_of_range(const System& sys, const SpecVector& z, double tol) {
  if (sys.kind() != SystemKind::kSorted && sys.kind() != SystemKind::kSymmetric) {
    throw DomainError("dual of ran(lambda) is only implemented for sorted and sym systems");
  }
  check_w(sys, z);
  double partial = 0.0;
  for (int k = 0; k < z.size(); ++k) {
    partial += z[k];
    if (k + 1 < z.size() && partial < -tol) return false;
  }
  return std::abs(partial) <= tol;
}

std::vector<SpecVector> orbit_vertices(const System& sys, const SpecVector& w) {
  check_w(sys, w);
  constexpr std::size_t kMaxVertices = 40320;
  std::vector<SpecVector> out;
  switch (sys.kind()) {
    case SystemKind::kSorted:
    case SystemKind::kSymmetric: {
      std::vector<double> v = w.to_std();
      std::sort(v.begin(), v.end());
      do {
        if (out.size() >= kMaxVertices) throw CapabilityError("orbit has too many vertices");
        out.emplace_back(std::span<const double>(v));
      } while (std::next_permutation(v.begin(), v.end()));
      break;
    }
    case SystemKind::kNorm: {
      const double r = std::abs(w[0]);
      out.push_back(SpecVector{r});
      if (r != 0.0) out.push_back(SpecVector{-r});
      break;
    }
    case SystemKind::kProduct: {
      auto [a, b] = split(sys, w);
      auto va = orbit_vertices(sys.left(), a);
      auto vb = orbit_vertices(sys.right(), b);
      if (va.size() * vb.size() > kMaxVertices) {
        throw CapabilityError("orbit has too many vertices");
      }
      for (const auto& p : va)
        for (const auto& q : vb) out.push_back(concat(p, q));
      break;
    }
  }
  return out;
}

Point random_point(const System& sys, Stream& rng) {
  return Point(rng.normal_vector(sys.dim_v()));
}

Point sample_orbit(const System& sys, const Point& x, Stream& rng) {
  check_layout(sys, x);
  switch (sys.kind()) {
    case SystemKind::kSorted: {
      Point out = x;
      std::shuffle(out.coords.data(), out.coords.data() + out.size(), rng.engine());
      return out;
    }
    case SystemKind::kSymmetric: {
      const int n = sys.order();
      const Eigen::MatrixXd q = random_orthogonal(n, rng);
      const SpecVector lam = lambda_of(sys, x);
      return pack_upper(q * lam.values.asDiagonal() * q.transpose());
    }
    case SystemKind::kNorm: {
      Eigen::VectorXd d = rng.normal_vector(sys.dim_v());
      while (d.norm() == 0.0) d = rng.normal_vector(sys.dim_v());
      return Point(x.coords.norm() / d.norm() * d);
    }
    case SystemKind::kProduct: {
      auto [a, b] = split(sys, x);
      return pair_point(sample_orbit(sys.left(), a, rng), sample_orbit(sys.right(), b, rng));
    }
  }
  throw LayoutError("unknown system kind");
}

Point lift(const System& sys, const SpecVector& q) {
  return align(sys, Point::Zero(sys.dim_v()), q);
}

}  // namespace ftvn
