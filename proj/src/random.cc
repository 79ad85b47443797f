#include "ftvn/random.h"

#include <cmath>
#include <numbers>

#include "ftvn/error.h"

namespace ftvn {

Eigen::MatrixXd random_orthogonal(int n, Stream& rng) {
  if (n < 1 || n > 64) throw DomainError("random_orthogonal: n must be in [1, 64]");
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n - 1; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double angle = rng.uniform(-std::numbers::pi, std::numbers::pi);
      const double c = std::cos(angle), s = std::sin(angle);
      for (int k = 0; k < n; ++k) {
        const double a = q(k, i), b = q(k, j);
        q(k, i) = c * a - s * b;
        q(k, j) = s * a + c * b;
      }
    }
  }
  for (int j = 0; j < n; ++j)
    if (rng.uniform() < 0.5) q.col(j) = -q.col(j);
  return q;
}

Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed) {
  Stream rng(seed, 0);
  return random_orthogonal(n, rng);
}

}  // namespace ftvn
