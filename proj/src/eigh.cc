#include "ftvn/eigh.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ftvn/error.h"

namespace ftvn {
namespace {

constexpr int kMaxDim = 64;
constexpr int kMaxSweeps = 100;

void validate(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw DomainError("eigh: matrix is not square");
  if (a.rows() > kMaxDim) throw CapabilityError("eigh: n > 64 is not supported");
  if (!a.allFinite()) throw DomainError("eigh: non-finite entries");
  if (a.size() == 0) return;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("eigh: matrix is not symmetric");
  }
}

double off_diagonal_norm(const Eigen::MatrixXd& s) {
  double sum = 0.0;
  for (int j = 0; j < s.cols(); ++j)
    for (int i = 0; i < s.rows(); ++i)
      if (i != j) sum += s(i, j) * s(i, j);
  return std::sqrt(sum);
}

// One Jacobi rotation zeroing s(p,q); updates v with the same rotation.
void rotate(Eigen::MatrixXd& s, Eigen::MatrixXd& v, int p, int q) {
  const double apq = s(p, q);
  const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double sn = t * c;
  const int n = static_cast<int>(s.rows());
  for (int k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double skp = s(k, p), skq = s(k, q);
    s(k, p) = s(p, k) = c * skp - sn * skq;
    s(k, q) = s(q, k) = sn * skp + c * skq;
  }
  s(p, p) -= t * apq;
  s(q, q) += t * apq;
  s(p, q) = s(q, p) = 0.0;
  for (int k = 0; k < n; ++k) {
    const double vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp - sn * vkq;
    v(k, q) = sn * vkp + c * vkq;
  }
}

// Replace the columns [lo, hi) of `basis` by Gram-Schmidt of the projections
// of e_1, e_2, ... onto their span.
void rebase_cluster(Eigen::MatrixXd& basis, int lo, int hi) {
  const int n = static_cast<int>(basis.rows());
  const int m = hi - lo;
  const Eigen::MatrixXd span = basis.middleCols(lo, m);
  Eigen::MatrixXd out(n, m);
  int filled = 0;
  const double accept = 0.5 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n && filled < m; ++k) {
    Eigen::VectorXd r = span * span.row(k).transpose();
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < filled; ++j) r -= out.col(j).dot(r) * out.col(j);
    const double len = r.norm();
    if (len > accept) out.col(filled++) = r / len;
  }
  if (filled == m) basis.middleCols(lo, m) = out;
}

}  // namespace

EigenPair eigh(const Eigen::MatrixXd& a) {
  validate(a);
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd s = 0.5 * (a + a.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double target = 1e-14 * s.norm();

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(s) <= target) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double g = 100.0 * std::abs(s(p, q));
        if (sweep > 3 && std::abs(s(p, p)) + g == std::abs(s(p, p)) &&
            std::abs(s(q, q)) + g == std::abs(s(q, q))) {
          s(p, q) = s(q, p) = 0.0;
          continue;
        }
        if (s(p, q) != 0.0) rotate(s, v, p, q);
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return s(i, i) > s(j, j); });

  EigenPair out;
  out.sweeps = sweep;
  out.basis.resize(n, n);
  out.values.values.resize(n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = s(order[k], order[k]);
    out.basis.col(k) = v.col(order[k]);
  }

  const double scale = std::max(1.0, out.values.values.cwiseAbs().maxCoeff());
  int lo = 0;
  while (lo < n) {
    int hi = lo + 1;
    while (hi < n && out.values[lo] - out.values[hi] <= 1e-11 * scale) ++hi;
    if (hi - lo > 1) rebase_cluster(out.basis, lo, hi);
    lo = hi;
  }
  return out;
}

SpecVector eigvalsh(const Eigen::MatrixXd& a) { return eigh(a).values; }

}  // namespace ftvn
